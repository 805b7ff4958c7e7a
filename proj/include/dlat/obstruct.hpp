#pragma once

// Slice obstructions for two-bridge knots through the lens spaces L(p, q),
// the sweep comparing the two conditions, and the definite-filling check.
//
// Everything is three-valued: a search that runs out of budget yields
// Inconclusive and is never reported as a failure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlat/embed.hpp"
#include "dlat/lattice.hpp"

namespace dlat {

inline constexpr const char* kVersion = "0.1.0";

enum class Status { Pass, Fail, Inconclusive, NotApplicable };

struct LabelledD {
  Int label = 0;
  Rational d;
  bool operator==(const LabelledD&) const = default;
};

struct ConditionOne {
  Status status = Status::NotApplicable;
  std::vector<LabelledD> evidence;  // every class of T with its d-value
  bool operator==(const ConditionOne&) const = default;
};

struct EmbeddingSide {
  Int q = 1;  // side is Lambda(p, q)
  IntMatrix gram;
  EmbedStatus status = EmbedStatus::Inconclusive;
  std::optional<EmbeddingWitness> witness;
  std::uint64_t nodes = 0;  // search transcript size; complete when status != Inconclusive
  bool operator==(const EmbeddingSide&) const = default;
};

struct ConditionTwo {
  Status status = Status::Inconclusive;
  EmbeddingSide first;   // Lambda(p, q)
  EmbeddingSide second;  // Lambda(p, p - q)
  bool operator==(const ConditionTwo&) const = default;
};

enum class SliceVerdict { Obstructed, PassesBoth, Inconclusive };

struct SliceReport {
  Int p = 1;
  Int q = 1;
  std::optional<Int> square;  // m with p = m^2, m odd
  ConditionOne cond1;
  ConditionTwo cond2;
  SliceVerdict verdict = SliceVerdict::Inconclusive;
  bool operator==(const SliceReport&) const = default;
};

// d on T vanishes. Throws NotOddSquare.
ConditionOne condition_one(Int p, Int q, const Limits& limits = {});
// Lambda(p, q) embeds in Z^rank and so does Lambda(p, p - q).
ConditionTwo condition_two(Int p, Int q, const Limits& limits = {});
SliceReport slice_report(Int p, Int q, const Limits& limits = {});

struct SweepOptions {
  Limits limits;
  std::optional<std::string> cache_dir;
};

struct SweepReport {
  Int max_m = 1;
  std::vector<SliceReport> rows;  // ordered by (p, q)
  std::vector<std::pair<Int, Int>> mismatches;
  std::vector<std::pair<Int, Int>> inconclusive;
  std::vector<std::pair<Int, Int>> passing;  // both conditions pass
  bool consistent() const { return mismatches.empty() && inconclusive.empty(); }
};

// All p = m^2 with m odd, m <= max_m, and q coprime to p. Jobs run on
// limits.threads workers; the report does not depend on the worker count.
SweepReport equivalence_sweep(Int max_m, const SweepOptions& options = {});

// Cache file name for a job: FNV-1a of (p, q, budgets, version) in hex.
std::string cache_key(Int p, Int q, const Limits& limits);

struct FillingCandidate {
  IntMatrix gram;  // a unimodular overlattice
  bool euclidean = false;
};

struct FillingReport {
  bool obstructed = false;  // no overlattice is Z^n
  std::vector<FillingCandidate> candidates;
};

// Throws NotPerfectSquare when det is not a square.
FillingReport definite_filling_obstruction(const IntegralLattice& lat, const Limits& limits = {});

std::string to_string(Status s);
std::string to_string(SliceVerdict v);
std::string to_string(EmbedStatus s);

}  // namespace dlat
