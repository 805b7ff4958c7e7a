#include "dlat/lens.hpp"

#include <numeric>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

void check_fraction(Int p, Int q) {
  if (p == 1 && q == 1) return;
  if (!(p > q && q >= 1) || std::gcd(p, q) != 1) {
    throw Error(ErrorCode::BadFraction,
                "need coprime p > q >= 1, got " + std::to_string(p) + "/" + std::to_string(q));
  }
}

void check_odd(Int p) {
  if (p < 1 || p % 2 == 0) throw Error(ErrorCode::EvenOrder, "p = " + std::to_string(p) + " must be odd");
}

}  // namespace

ContFrac neg_cont_frac(Int p, Int q) {
  check_fraction(p, q);
  ContFrac cf{p, q, {}};
  if (p == 1) return cf;
  // p/q = a - r/q with a = ceil(p/q), then continue with q/r.
  Int num = p, den = q;
  while (den != 0) {
    const Int a = (num + den - 1) / den;
    cf.coeffs.push_back(a);
    const Int r = a * den - num;
    num = den;
    den = r;
  }
  return cf;
}

Rational evaluate(const ContFrac& cf) {
  if (cf.coeffs.empty()) return 1;
  Rational v = cf.coeffs.back();
  for (std::size_t i = cf.coeffs.size() - 1; i-- > 0;) v = cf.coeffs[i] - 1 / v;
  return v;
}

IntegralLattice linear_plumbing(Int p, Int q) {
  const ContFrac cf = neg_cont_frac(p, q);
  PlumbingTree t{cf.coeffs, {}};
  for (std::size_t i = 0; i + 1 < cf.coeffs.size(); ++i) t.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return tree_plumbing(t);
}

IntegralLattice tree_plumbing(const PlumbingTree& t) {
  const int n = static_cast<int>(t.weights.size());
  if (n > 0 && static_cast<int>(t.edges.size()) != n - 1) throw Error(ErrorCode::BadInput, "plumbing graph is not a tree");
  IntMatrix g(n, IntVec(n, 0));
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < n; ++i) g[i][i] = t.weights[i];
  for (auto [a, b] : t.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw Error(ErrorCode::BadInput, "bad plumbing edge");
    if (find(a) == find(b)) throw Error(ErrorCode::BadInput, "plumbing graph has a cycle");
    parent[find(a)] = find(b);
    g[a][b] = g[b][a] = -1;
  }
  return lattice_from_gram(std::move(g));
}

LensDTable lens_d(Int p, Int q, const Limits& limits) {
  check_odd(p);
  LensDTable out{p, q, {}, {}};
  IntegralLattice lat = linear_plumbing(p, q);
  out.table = d_table(lat, limits);
  if (p == 1) {
    out.labels.assign(1, 0);
    return out;
  }
  DiscriminantGroup group = discriminant_group(lat);
  for (const auto& e : out.table.entries) out.labels.push_back(c1_image(lat, group, e.cls).at(0));
  return out;
}

Int odd_square_root(Int p) {
  Int m = 1;
  while (m * m < p) m += 2;
  if (p < 1 || m * m != p) throw Error(ErrorCode::NotOddSquare, std::to_string(p) + " is not an odd square");
  return m;
}

std::vector<CharClass> subset_T(Int p, Int q, const Limits& limits) {
  const Int m = odd_square_root(p);
  LensDTable t = lens_d(p, q, limits);
  std::vector<CharClass> out;
  for (std::size_t i = 0; i < t.table.entries.size(); ++i)
    if (t.labels[i] % m == 0) out.push_back(t.table.entries[i].cls);
  return out;
}

TorsorIsoWitness orientation_reverse_check(Int p, Int q, const Limits& limits) {
  check_odd(p);
  IntegralLattice a = linear_plumbing(p, q);
  IntegralLattice b = p == 1 ? linear_plumbing(1, 1) : linear_plumbing(p, p - q);
  DIsoOptions options;
  options.limits = limits;
  auto w = d_isomorphic(a, b, -1, options);
  if (!w) {
    throw Error(ErrorCode::NoWitness, "no orientation-reversing d-isomorphism for L(" + std::to_string(p) + "," +
                                          std::to_string(q) + ")");
  }
  return *w;
}

}  // namespace dlat
