#pragma once

// Isomorphisms of d-invariants: a bijection phi: X(L1) -> X(L2) of the form
// phi(x0 + g) = y0 + psi(g) for a group isomorphism psi: L1^*/L1 -> L2^*/L2,
// commuting with conjugation and with d2(phi(x)) = sign * d1(x).

#include <optional>
#include <string>

#include "dlat/embed.hpp"
#include "dlat/lattice.hpp"

namespace dlat {

struct Diagram;

struct TorsorIsoWitness {
  int sign = 1;
  std::vector<IntVec> group_iso;  // image of the i-th generator of L1^*/L1, in L2^*/L2 coordinates
  IntVec base_from;               // canonical representative of x0
  IntVec base_to;                 // canonical representative of y0
  bool operator==(const TorsorIsoWitness&) const = default;
};

struct DIsoOptions {
  bool strict_linking = false;  // also require b2(psi a, psi b) = sign * b1(a, b)
  Limits limits;
};

// Reason the pair cannot be isomorphic, found from cheap statistics: determinant,
// invariant factors, sorted d-values. nullopt when all of them agree.
std::optional<std::string> separating_statistic(const IntegralLattice& a, const IntegralLattice& b, int sign,
                                                const Limits& limits = {});

// First witness in the order (base image y0, generator images), with the base x0
// fixed to a class of least frequent d-value. nullopt when the search is
// exhausted. Throws GroupTooLarge above limits.group_cap.
std::optional<TorsorIsoWitness> d_isomorphic(const IntegralLattice& a, const IntegralLattice& b, int sign,
                                             const DIsoOptions& options = {});

// Checks the witness against every class of `a`.
bool verify_torsor_iso(const IntegralLattice& a, const IntegralLattice& b, const TorsorIsoWitness& w,
                       const Limits& limits = {});

Rational total_d(const IntegralLattice& lat, const Limits& limits = {});

enum class MutationVerdict { Isomorphic, NotIsomorphic, Inconclusive };

struct MutationComparison {
  MutationVerdict verdict = MutationVerdict::Inconclusive;
  std::optional<TorsorIsoWitness> witness;
  std::string reason;
};

// Compares the d-invariants of the flow lattices of the black Tait graphs.
MutationComparison mutation_compare(const Diagram& d1, const Diagram& d2, const DIsoOptions& options = {});

struct GlueCheck {
  bool glued = false;  // some chi in x, chi' in y restrict from a characteristic covector of Z^n
  Rational sum;        // d1(x) + d2(y)
  bool holds = true;   // !glued || sum >= 0
};

// `embedding` must embed a + b (block sum) into Z^n with n = rank a + rank b.
GlueCheck glue_inequality_check(const IntegralLattice& a, const IntegralLattice& b, const CharClass& x,
                                const CharClass& y, const std::optional<EmbeddingWitness>& embedding,
                                const Limits& limits = {});

}  // namespace dlat
