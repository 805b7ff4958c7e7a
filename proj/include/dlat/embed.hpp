#pragma once

// Isometric embeddings of a positive-definite lattice into Z^n.

#include <cstdint>
#include <optional>

#include "dlat/lattice.hpp"

namespace dlat {

// Rows of W are the images of the lattice basis; W * W^T == gram.
struct EmbeddingWitness {
  IntMatrix matrix;
  bool operator==(const EmbeddingWitness&) const = default;
};

enum class EmbedStatus { Embeds, DoesNotEmbed, Inconclusive };

struct EmbedResult {
  EmbedStatus status = EmbedStatus::Inconclusive;
  std::optional<EmbeddingWitness> witness;  // set iff status == Embeds
  std::uint64_t nodes = 0;
};

// Exhaustive backtracking. Images are found modulo signed coordinate
// permutations: columns that agree on every placed row are interchangeable, so
// entries are taken non-increasing within such a group, and non-negative in
// columns that are still zero. Inconclusive once limits.budget_nodes is spent.
EmbedResult embed(const IntegralLattice& lat, int n, const Limits& limits = {});

// Like embed, but throws SearchBudgetExceeded instead of returning Inconclusive.
std::optional<EmbeddingWitness> embed_or_throw(const IntegralLattice& lat, int n, const Limits& limits = {});

bool verify_witness(const IntegralLattice& lat, const EmbeddingWitness& w);

// For unimodular lattices: true iff the minimal characteristic norm equals the
// rank. When embed(lat, rank) completes within budget its answer must agree;
// disagreement throws std::logic_error.
bool is_euclidean(const IntegralLattice& lat, const Limits& limits = {});

}  // namespace dlat
