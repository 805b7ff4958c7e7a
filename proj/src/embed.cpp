#include "dlat/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

Int isqrt_floor(Int v) {
  Int r = static_cast<Int>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

class EmbedSearch {
 public:
  EmbedSearch(const IntMatrix& gram, int n, std::uint64_t budget)
      : gram_(gram), r_(static_cast<int>(gram.size())), n_(n), budget_(budget) {
    order_ = placement_order();
    rows_.assign(r_, IntVec(n_, 0));
    levels_.resize(r_);
  }

  EmbedResult run() {
    EmbedResult out;
    bool found = false;
    try {
      found = place(0);
    } catch (const Exhausted&) {
      out.status = EmbedStatus::Inconclusive;
      out.nodes = nodes_;
      return out;
    }
    out.nodes = nodes_;
    if (!found) {
      out.status = EmbedStatus::DoesNotEmbed;
      return out;
    }
    EmbeddingWitness w;
    w.matrix.assign(r_, IntVec{});
    for (int k = 0; k < r_; ++k) w.matrix[order_[k]] = rows_[k];
    out.status = EmbedStatus::Embeds;
    out.witness = std::move(w);
    return out;
  }

 private:
  struct Exhausted {};

  // Decreasing diagonal; ties go to vectors meeting an already placed one,
  // then to the lower index.
  std::vector<int> placement_order() const {
    std::vector<int> order;
    std::vector<bool> placed(r_, false), adjacent(r_, false);
    for (int step = 0; step < r_; ++step) {
      int best = -1;
      for (int i = 0; i < r_; ++i) {
        if (placed[i]) continue;
        if (best < 0 || gram_[i][i] > gram_[best][best] ||
            (gram_[i][i] == gram_[best][best] && adjacent[i] && !adjacent[best])) {
          best = i;
        }
      }
      placed[best] = true;
      order.push_back(best);
      for (int j = 0; j < r_; ++j)
        if (gram_[best][j] != 0) adjacent[j] = true;
    }
    return order;
  }

  void tick() {
    if (++nodes_ > budget_) throw Exhausted{};
  }

  bool place(int k) {
    if (k == r_) return true;
    tick();
    const int vi = order_[k];
    // Column groups: identical signature over placed rows; zero group last.
    std::vector<int> cols(n_);
    for (int c = 0; c < n_; ++c) cols[c] = c;
    auto signature_less = [&](int a, int b) {
      for (int j = 0; j < k; ++j)
        if (rows_[j][a] != rows_[j][b]) return rows_[j][a] > rows_[j][b];
      return a < b;
    };
    auto is_zero = [&](int c) {
      for (int j = 0; j < k; ++j)
        if (rows_[j][c] != 0) return false;
      return true;
    };
    std::stable_partition(cols.begin(), cols.end(), [&](int c) { return !is_zero(c); });
    const auto zero_begin = std::find_if(cols.begin(), cols.end(), is_zero);
    std::sort(cols.begin(), zero_begin, signature_less);
    Level& L = levels_[k];
    L.col_order = cols;
    L.same_as_prev.assign(n_, false);
    L.zero_col.assign(n_, false);
    for (int p = 0; p < n_; ++p) {
      L.zero_col[p] = is_zero(L.col_order[p]);
      if (p == 0) continue;
      bool same = true;
      for (int j = 0; j < k && same; ++j) same = rows_[j][L.col_order[p]] == rows_[j][L.col_order[p - 1]];
      L.same_as_prev[p] = same;
    }
    // Suffix norms of placed rows over the column order.
    L.suffix.assign(k, std::vector<Int>(n_ + 1, 0));
    for (int j = 0; j < k; ++j)
      for (int p = n_ - 1; p >= 0; --p) {
        const Int e = rows_[j][L.col_order[p]];
        L.suffix[j][p] = L.suffix[j][p + 1] + e * e;
      }
    L.target.assign(k, 0);
    for (int j = 0; j < k; ++j) L.target[j] = gram_[vi][order_[j]];
    L.partial.assign(k, 0);
    std::fill(rows_[k].begin(), rows_[k].end(), 0);
    return fill(k, 0, gram_[vi][vi]);
  }

  // Choose entry for column position p of row k with `rem` norm left.
  bool fill(int k, int p, Int rem) {
    Level& L = levels_[k];
    for (int j = 0; j < k; ++j) {
      const Int gap = L.target[j] - L.partial[j];
      if (gap != 0 && (rem == 0 || gap * gap > rem * L.suffix[j][p])) return false;
    }
    // At rem == 0 every inner product matches and the remaining entries are zero.
    if (rem == 0) {
      if (p < n_ && L.same_as_prev[p] && rows_[k][L.col_order[p - 1]] < 0) return false;
      return place(k + 1);
    }
    if (p == n_) return false;
    const int c = L.col_order[p];
    Int hi = isqrt_floor(rem);
    if (p > 0 && L.same_as_prev[p]) hi = std::min(hi, rows_[k][L.col_order[p - 1]]);
    const Int lo = L.zero_col[p] ? 0 : -isqrt_floor(rem);
    for (Int v = hi; v >= lo; --v) {
      tick();
      rows_[k][c] = v;
      for (int j = 0; j < k; ++j) L.partial[j] += v * rows_[j][c];
      const bool ok = fill(k, p + 1, rem - v * v);
      for (int j = 0; j < k; ++j) L.partial[j] -= v * rows_[j][c];
      if (ok) return true;
    }
    rows_[k][c] = 0;
    return false;
  }

  const IntMatrix& gram_;
  int r_, n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> order_;
  IntMatrix rows_;  // rows in placement order
  struct Level {
    std::vector<int> col_order;
    std::vector<bool> same_as_prev, zero_col;
    std::vector<std::vector<Int>> suffix;
    IntVec target, partial;
  };
  std::vector<Level> levels_;  // per-row scratch, rebuilt by place()
};

}  // namespace

EmbedResult embed(const IntegralLattice& lat, int n, const Limits& limits) {
  if (n < 0) throw Error(ErrorCode::BadInput, "target dimension must be non-negative");
  if (lat.rank() == 0) return EmbedResult{EmbedStatus::Embeds, EmbeddingWitness{}, 0};
  if (lat.rank() > n) {
    // Rows of a witness would be independent vectors in Z^n.
    return EmbedResult{EmbedStatus::DoesNotEmbed, std::nullopt, 0};
  }
  return EmbedSearch(lat.gram(), n, limits.budget_nodes).run();
}

std::optional<EmbeddingWitness> embed_or_throw(const IntegralLattice& lat, int n, const Limits& limits) {
  EmbedResult r = embed(lat, n, limits);
  if (r.status == EmbedStatus::Inconclusive) {
    throw Error(ErrorCode::SearchBudgetExceeded,
                "embedding search stopped after " + std::to_string(r.nodes) + " nodes");
  }
  return r.witness;
}

bool verify_witness(const IntegralLattice& lat, const EmbeddingWitness& w) {
  if (static_cast<int>(w.matrix.size()) != lat.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "witness has " + std::to_string(w.matrix.size()) + " rows");
  }
  if (!w.matrix.empty()) {
    const std::size_t n = w.matrix[0].size();
    for (const auto& row : w.matrix)
      if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "ragged witness");
  }
  return multiply_transpose(w.matrix, w.matrix) == lat.gram();
}

bool is_euclidean(const IntegralLattice& lat, const Limits& limits) {
  if (!lat.is_unimodular()) throw Error(ErrorCode::NotUnimodular, "det is " + lat.det().str());
  const bool by_d = min_char_norm(lat, char_classes(lat, limits.det_cap).at(0)) == lat.rank();
  if (lat.rank() == 0) return true;
  EmbedResult r = embed(lat, lat.rank(), limits);
  if (r.status != EmbedStatus::Inconclusive && (r.status == EmbedStatus::Embeds) != by_d) {
    throw std::logic_error("characteristic norm and embedding search disagree");
  }
  return by_d;
}

}  // namespace dlat
