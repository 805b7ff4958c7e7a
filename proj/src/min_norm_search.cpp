#include "min_norm_search.hpp"

#include <cmath>
#include <limits>

namespace dlat::detail {

namespace {
constexpr Int kNone = std::numeric_limits<Int>::max();
}

struct MinNormSearch::State {
  IntVec x;
  std::vector<double> y;  // G^{-1} x / 2
  IntVec v;
  std::vector<double> w;  // v + y on fixed coordinates
  std::vector<std::unordered_map<Key, Memo, KeyHash>> memo;
};

MinNormSearch::MinNormSearch(const IntMatrix& gram) : n_(static_cast<int>(gram.size())), gram_(gram) {
  // Symbolic structure of L, then the numeric factorisation on it.
  std::vector<std::vector<bool>> structure(n_, std::vector<bool>(n_, false));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < i; ++j) structure[i][j] = gram_[i][j] != 0;
  for (int k = 0; k < n_; ++k) {
    std::vector<int> below;
    for (int i = k + 1; i < n_; ++i)
      if (structure[i][k]) below.push_back(i);
    for (std::size_t a = 0; a < below.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) structure[below[a]][below[b]] = true;
  }
  std::vector<std::vector<double>> L(n_, std::vector<double>(n_, 0.0));
  diag_.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    double d = static_cast<double>(gram_[j][j]);
    for (int k = 0; k < j; ++k)
      if (structure[j][k]) d -= L[j][k] * L[j][k] * diag_[k];
    diag_[j] = d;
    for (int i = j + 1; i < n_; ++i) {
      if (!structure[i][j]) continue;
      double s = static_cast<double>(gram_[i][j]);
      for (int k = 0; k < j; ++k)
        if (structure[i][k] && structure[j][k]) s -= L[i][k] * L[j][k] * diag_[k];
      L[i][j] = s / d;
    }
  }
  lcol_.assign(n_, {});
  gupper_.assign(n_, {});
  gall_.assign(n_, {});
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (structure[j][i]) lcol_[i].emplace_back(j, L[j][i]);
      if (gram_[i][j] != 0) gupper_[i].emplace_back(j, gram_[i][j]);
    }
    for (int j = 0; j < n_; ++j)
      if (j != i && gram_[i][j] != 0) gall_[i].emplace_back(j, gram_[i][j]);
  }
  // Level l has coordinates 0..l-1 free; its subtree depends on the fixed
  // coordinates j >= l that are coupled to some free one.
  frontier_.assign(n_ + 1, {});
  memoised_.assign(n_ + 1, false);
  std::vector<bool> in(n_, false);
  for (int l = 1; l < n_; ++l) {
    in[l - 1] = false;
    for (auto [j, coef] : lcol_[l - 1]) in[j] = true;
    std::vector<int> k;
    for (int j = l; j < n_; ++j)
      if (in[j]) k.push_back(j);
    if (static_cast<int>(k.size()) <= kMaxFrontier) {
      memoised_[l] = true;
      frontier_[l] = std::move(k);
    }
  }
}

MinNormSearch::Result MinNormSearch::minimise(const IntVec& c) const {
  State s;
  s.x = c;
  // Coordinate descent: replace x by x + 2 t G e_i while the norm drops.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n_; ++i) {
      const Int g = gram_[i][i];
      const Int t = static_cast<Int>(std::llround(-static_cast<double>(s.x[i]) / (2.0 * g)));
      if (t == 0 || t * (s.x[i] + t * g) >= 0) continue;
      s.x[i] += 2 * t * g;
      for (auto [j, gij] : gall_[i]) s.x[j] += 2 * t * gij;
      changed = true;
    }
  }
  // y = G^{-1} x / 2 via the factorisation.
  s.y.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i) s.y[i] = static_cast<double>(s.x[i]) / 2.0;
  for (int i = 0; i < n_; ++i)
    for (auto [j, lji] : lcol_[i]) s.y[j] -= lji * s.y[i];
  for (int i = 0; i < n_; ++i) s.y[i] /= diag_[i];
  for (int i = n_ - 1; i >= 0; --i)
    for (auto [j, lji] : lcol_[i]) s.y[i] -= lji * s.y[j];

  double qy = 0.0;
  for (int i = 0; i < n_; ++i) qy += static_cast<double>(s.x[i]) * s.y[i];
  qy /= 2.0;

  s.v.assign(n_, 0);
  s.w.assign(n_, 0.0);
  s.memo.resize(n_ + 1);
  // f(0) = 0, so only strictly negative values are of interest.
  Int best = search(s, n_, -qy, -1);
  return Result{std::move(s.x), best == kNone ? 0 : best};
}

Int MinNormSearch::search(State& s, int level, double beta, Int budget) const {
  if (level == 0) return budget >= 0 ? 0 : kNone;
  if (!memoised_[level]) return expand(s, level, beta, budget);
  Key key{};
  const auto& k = frontier_[level];
  for (std::size_t a = 0; a < k.size(); ++a) key[a] = s.v[k[a]];
  auto& table = s.memo[level];
  auto it = table.find(key);
  if (it != table.end()) {
    if (it->second.exact) return it->second.value <= budget ? it->second.value : kNone;
    if (it->second.value > budget) return kNone;
  }
  Int r = expand(s, level, beta, budget);
  Memo& m = table.try_emplace(key, Memo{false, std::numeric_limits<Int>::min()}).first->second;
  if (r != kNone) m = Memo{true, r};
  else m.value = std::max(m.value, budget + 1);
  return r;
}

Int MinNormSearch::expand(State& s, int level, double beta, Int budget) const {
  const int i = level - 1;
  double center = -s.y[i];
  for (auto [j, lji] : lcol_[i]) center -= lji * s.w[j];
  Int lin = s.x[i];
  for (auto [j, gij] : gupper_[i]) lin += 2 * gij * s.v[j];
  const Int gii = gram_[i][i];
  const double d = diag_[i];

  Int best = kNone;
  const Int mid = static_cast<Int>(std::llround(center));
  Int up = mid, down = mid - 1;
  bool up_alive = true, down_alive = true;
  while (up_alive || down_alive) {
    const double limit = static_cast<double>(budget) + 0.5 - beta;
    const double du = (static_cast<double>(up) - center), dd = (static_cast<double>(down) - center);
    if (up_alive && d * du * du > limit) up_alive = false;
    if (down_alive && d * dd * dd > limit) down_alive = false;
    if (!up_alive && !down_alive) break;
    Int vi;
    double dist;
    if (up_alive && (!down_alive || du * du <= dd * dd)) {
      vi = up++;
      dist = d * du * du;
    } else {
      vi = down--;
      dist = d * dd * dd;
    }
    const Int term = vi * (gii * vi + lin);
    s.v[i] = vi;
    s.w[i] = static_cast<double>(vi) + s.y[i];
    const Int sub = search(s, i, beta + dist - static_cast<double>(term), budget - term);
    if (sub != kNone && term + sub <= budget) {
      best = term + sub;
      budget = best - 1;
    }
  }
  s.v[i] = 0;
  s.w[i] = 0.0;
  return best;
}

}  // namespace dlat::detail
