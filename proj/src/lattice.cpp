#include "dlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "dlat/errors.hpp"
#include "dlat/parallel.hpp"
#include "min_norm_search.hpp"

namespace dlat {

// ---------------------------------------------------------------------------
// IntegralLattice

IntegralLattice IntegralLattice::from_gram(IntMatrix gram) {
  if (!is_square(gram)) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  if (!is_symmetric(gram)) throw Error(ErrorCode::NotSymmetric, "Gram matrix must be symmetric");
  auto impl = std::make_shared<Impl>();
  if (gram.empty()) {
    impl->det = 1;
  } else {
    Adjugate a = dlat::adjugate(gram);
    const bool definite = !a.leading_minors.empty() &&
                          std::all_of(a.leading_minors.begin(), a.leading_minors.end(),
                                      [](const BigInt& m) { return m > 0; });
    if (!definite) throw Error(ErrorCode::NotPositiveDefinite, "Gram matrix is not positive definite");
    impl->det = std::move(a.det);
    impl->adj = std::move(a.adj);
  }
  impl->gram = std::move(gram);
  return IntegralLattice(std::move(impl));
}

IntegralLattice lattice_from_gram(IntMatrix gram) {
  return IntegralLattice::from_gram(std::move(gram));
}

Int IntegralLattice::det_within(Int cap) const {
  if (det() > cap) {
    throw Error(ErrorCode::DetTooLarge, "det " + det().str() + " exceeds cap " + std::to_string(cap));
  }
  return static_cast<Int>(det());
}

RationalMatrix IntegralLattice::gram_inverse() const {
  const int n = rank();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = Rational(impl_->adj[i][j], impl_->det);
  return inv;
}

BigInt IntegralLattice::adj_pairing(const IntVec& a, const IntVec& b) const {
  const int n = rank();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "covector length differs from rank");
  }
  BigInt s = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    BigInt row = 0;
    for (int j = 0; j < n; ++j)
      if (b[j] != 0) row += impl_->adj[i][j] * b[j];
    s += row * a[i];
  }
  return s;
}

Rational IntegralLattice::dual_pairing(const IntVec& a, const IntVec& b) const {
  return Rational(adj_pairing(a, b), det());
}

// ---------------------------------------------------------------------------
// Discriminant group

namespace {

Rational frac_part(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt m = num % den;
  if (m < 0) m += den;
  return Rational(m, den);
}

Rational mod2(const Rational& r) {
  Rational half = r / 2;
  return 2 * frac_part(half);
}

}  // namespace

Int DiscriminantGroup::order() const {
  Int o = 1;
  for (Int s : orders) o *= s;
  return o;
}

IntVec DiscriminantGroup::element_of(const IntVec& covector) const {
  IntVec e(orders.size(), 0);
  for (std::size_t k = 0; k < orders.size(); ++k) {
    __int128 s = 0;
    for (std::size_t i = 0; i < covector.size(); ++i) s += static_cast<__int128>(covector[i]) * coordinate_map[i][k];
    s %= orders[k];
    if (s < 0) s += orders[k];
    e[k] = static_cast<Int>(s);
  }
  return e;
}

IntVec DiscriminantGroup::covector_of(const IntVec& element) const {
  const std::size_t n = coordinate_map.size();
  IntVec c(n, 0);
  for (std::size_t k = 0; k < orders.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) c[i] += element[k] * generators[k][i];
  return c;
}

Rational DiscriminantGroup::linking_form(const IntVec& a, const IntVec& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = 0; j < orders.size(); ++j)
      if (a[i] != 0 && b[j] != 0) s += linking[i][j] * a[i] * b[j];
  return frac_part(s);
}

Rational DiscriminantGroup::quadratic_refinement(const IntegralLattice& lat, const IntVec& a) const {
  IntVec c = covector_of(a);
  return mod2(lat.dual_pairing(c, c) + lat.dual_pairing(c, base_char));
}

std::size_t DiscriminantGroup::index_of(const IntVec& element) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < orders.size(); ++k) idx = idx * orders[k] + static_cast<std::size_t>(element[k]);
  return idx;
}

IntVec DiscriminantGroup::element_at(std::size_t index) const {
  IntVec e(orders.size());
  for (std::size_t k = orders.size(); k-- > 0;) {
    e[k] = static_cast<Int>(index % orders[k]);
    index /= orders[k];
  }
  return e;
}

DiscriminantGroup discriminant_group(const IntegralLattice& lat) {
  const int n = lat.rank();
  DiscriminantGroup g;
  g.base_char.assign(n, 0);
  for (int i = 0; i < n; ++i) g.base_char[i] = mod_pos(lat.gram()[i][i], 2);
  g.coordinate_map.assign(n, IntVec{});
  if (n == 0 || lat.det() == 1) return g;
  const Int det = to_int(lat.det());
  SmithForm sf = smith_mod(lat.gram(), det);
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (sf.diag[k] > 1) keep.push_back(k);
  for (int k : keep) {
    g.orders.push_back(sf.diag[k]);
    IntVec gen(n);
    for (int i = 0; i < n; ++i) gen[i] = sf.col_inverse[k][i];
    g.generators.push_back(std::move(gen));
  }
  for (int i = 0; i < n; ++i) {
    for (int k : keep) g.coordinate_map[i].push_back(mod_pos(sf.col_transform[i][k], sf.diag[k]));
  }
  const std::size_t r = keep.size();
  g.linking.assign(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      g.linking[i][j] = frac_part(lat.dual_pairing(g.generators[i], g.generators[j]));
  return g;
}

// ---------------------------------------------------------------------------
// Characteristic classes

namespace {

// HNF basis of 2 G Z^n; coset representatives of Z^n modulo it are the points
// of the box prod [0, pivot_k).
IntMatrix char_reduction_basis(const IntegralLattice& lat, Int det_cap) {
  const Int det = lat.det_within(det_cap);
  IntMatrix twice = lat.gram();
  for (auto& r : twice)
    for (auto& v : r) v *= 2;
  return hermite_mod(twice, lat.rank(), 2 * det);
}

IntVec reduce_char(const IntMatrix& basis, IntVec c) {
  const int n = static_cast<int>(c.size());
  for (int k = 0; k < n; ++k) {
    Int q = floor_div(c[k], basis[k][k]);
    if (q == 0) continue;
    for (int j = k; j < n; ++j) c[j] -= q * basis[k][j];
  }
  return c;
}

}  // namespace

bool is_characteristic(const IntegralLattice& lat, const IntVec& c) {
  if (static_cast<int>(c.size()) != lat.rank()) return false;
  for (int i = 0; i < lat.rank(); ++i)
    if (mod_pos(c[i] - lat.gram()[i][i], 2) != 0) return false;
  return true;
}

CharClass canonical_class(const IntegralLattice& lat, const IntVec& c, Int det_cap) {
  if (!is_characteristic(lat, c)) throw Error(ErrorCode::BadInput, "covector is not characteristic");
  return CharClass{reduce_char(char_reduction_basis(lat, det_cap), c)};
}

std::vector<CharClass> char_classes(const IntegralLattice& lat, Int det_cap) {
  const int n = lat.rank();
  const IntMatrix basis = char_reduction_basis(lat, det_cap);
  std::vector<CharClass> out;
  IntVec c(n);
  for (int i = 0; i < n; ++i) c[i] = mod_pos(lat.gram()[i][i], 2);
  // Odometer over the box with the parity constraint.
  for (;;) {
    out.push_back(CharClass{c});
    int k = n - 1;
    while (k >= 0) {
      c[k] += 2;
      if (c[k] < basis[k][k]) break;
      c[k] = mod_pos(lat.gram()[k][k], 2);
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

CharClass conjugate(const IntegralLattice& lat, const CharClass& x) {
  IntVec neg = x.rep;
  for (auto& v : neg) v = -v;
  return canonical_class(lat, neg, std::numeric_limits<Int>::max() / 4);
}

std::vector<CharClass> conjugates(const IntegralLattice& lat, const std::vector<CharClass>& xs, Int det_cap) {
  const IntMatrix basis = char_reduction_basis(lat, det_cap);
  std::vector<CharClass> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    if (!is_characteristic(lat, x.rep)) throw Error(ErrorCode::BadInput, "covector is not characteristic");
    IntVec neg = x.rep;
    for (auto& v : neg) v = -v;
    out.push_back(CharClass{reduce_char(basis, std::move(neg))});
  }
  return out;
}

IntVec c1_image(const IntegralLattice& lat, const DiscriminantGroup& group, const CharClass& x) {
  if (lat.det() % 2 == 0) {
    throw Error(ErrorCode::EvenDeterminant, "c1 is only a bijection for odd determinant");
  }
  return group.element_of(x.rep);
}

// ---------------------------------------------------------------------------
// d-invariants

Rational min_char_norm(const IntegralLattice& lat, const CharClass& x) {
  if (!is_characteristic(lat, x.rep)) throw Error(ErrorCode::BadInput, "class representative is not characteristic");
  if (lat.rank() == 0) return 0;
  detail::MinNormSearch search(lat.gram());
  auto r = search.minimise(x.rep);
  return lat.dual_pairing(r.center, r.center) + 4 * r.f_min;
}

std::optional<std::size_t> DTable::find(const CharClass& x) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), x,
                             [](const DEntry& e, const CharClass& c) { return e.cls < c; });
  if (it == entries.end() || it->cls != x) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

Rational DTable::total() const {
  Rational s = 0;
  for (const auto& e : entries) s += e.d;
  return s;
}

DTable d_table(const IntegralLattice& lat, const Limits& limits) {
  DTable t;
  t.det = lat.det_within(limits.det_cap);
  t.rank = lat.rank();
  auto classes = char_classes(lat, limits.det_cap);
  t.entries.resize(classes.size());
  if (lat.rank() == 0) {
    t.entries[0] = DEntry{classes[0], 0, 0};
    return t;
  }
  detail::MinNormSearch search(lat.gram());
  parallel_for(classes.size(), limits.threads, [&](std::size_t i) {
    auto r = search.minimise(classes[i].rep);
    Rational norm = lat.dual_pairing(r.center, r.center) + 4 * r.f_min;
    t.entries[i] = DEntry{classes[i], norm, (norm - lat.rank()) / 4};
  });
  return t;
}

DTable brute_force_d_table(const IntegralLattice& lat, Int radius, Int det_cap) {
  const int n = lat.rank();
  DTable t;
  t.det = lat.det_within(det_cap);
  t.rank = n;
  if (n == 0) {
    t.entries.push_back(DEntry{CharClass{}, 0, 0});
    return t;
  }
  const IntMatrix basis = char_reduction_basis(lat, det_cap);
  std::map<IntVec, BigInt> best;  // class -> min of c^T adj c
  IntVec c(n);
  auto first_value = [&](int i) {
    Int lo = -radius;
    if (mod_pos(lo - lat.gram()[i][i], 2) != 0) ++lo;
    return lo;
  };
  for (int i = 0; i < n; ++i) c[i] = first_value(i);
  if (std::any_of(c.begin(), c.end(), [&](Int v) { return v > radius; })) {
    throw Error(ErrorCode::BoxTooSmall, "box contains no characteristic covector");
  }
  for (;;) {
    BigInt norm = lat.adj_pairing(c, c);
    IntVec key = reduce_char(basis, c);
    auto it = best.find(key);
    if (it == best.end()) best.emplace(std::move(key), std::move(norm));
    else if (norm < it->second) it->second = std::move(norm);
    int k = n - 1;
    while (k >= 0) {
      c[k] += 2;
      if (c[k] <= radius) break;
      c[k] = first_value(k);
      --k;
    }
    if (k < 0) break;
  }
  if (static_cast<Int>(best.size()) != t.det) {
    throw Error(ErrorCode::BoxTooSmall, "box meets only " + std::to_string(best.size()) + " of " +
                                            std::to_string(t.det) + " classes");
  }
  // Outside the box some |c_i| > radius, and c_i^2 <= |c|^2 * G_ii.
  Int max_diag = 0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, lat.gram()[i][i]);
  const Rational outside_bound(BigInt(radius + 1) * (radius + 1), BigInt(max_diag));
  for (auto& [rep, adjnorm] : best) {
    Rational norm(adjnorm, lat.det());
    if (norm > outside_bound) {
      throw Error(ErrorCode::BoxTooSmall, "radius " + std::to_string(radius) + " cannot certify a minimum");
    }
    t.entries.push_back(DEntry{CharClass{rep}, norm, (norm - n) / 4});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Overlattices and constructions

namespace {

// Subgroups of order `target` on which the linking form vanishes, as sorted
// element-index lists.
std::vector<std::vector<std::size_t>> isotropic_subgroups(const DiscriminantGroup& g, Int target) {
  const std::size_t order = static_cast<std::size_t>(g.order());
  std::vector<IntVec> elements(order);
  for (std::size_t i = 0; i < order; ++i) elements[i] = g.element_at(i);
  auto add = [&](std::size_t a, std::size_t b) {
    IntVec e(g.orders.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = (elements[a][k] + elements[b][k]) % g.orders[k];
    return g.index_of(e);
  };
  std::vector<std::size_t> self_isotropic;
  for (std::size_t i = 1; i < order; ++i)
    if (g.linking_form(elements[i], elements[i]) == 0) self_isotropic.push_back(i);

  std::set<std::vector<std::size_t>> seen, found;
  struct Node {
    std::vector<std::size_t> members;
    std::vector<std::size_t> gens;
  };
  std::vector<Node> stack{{{0}, {}}};
  seen.insert({0});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (static_cast<Int>(node.members.size()) == target) {
      found.insert(node.members);
      continue;
    }
    for (std::size_t h : self_isotropic) {
      if (std::binary_search(node.members.begin(), node.members.end(), h)) continue;
      bool ok = true;
      for (std::size_t s : node.gens)
        if (g.linking_form(elements[h], elements[s]) != 0) { ok = false; break; }
      if (!ok) continue;
      // Close under addition of h.
      std::vector<std::size_t> grown = node.members;
      std::set<std::size_t> members(grown.begin(), grown.end());
      for (std::size_t i = 0; i < grown.size(); ++i) {
        std::size_t next = add(grown[i], h);
        if (members.insert(next).second) grown.push_back(next);
      }
      std::vector<std::size_t> sorted(members.begin(), members.end());
      if (target % static_cast<Int>(sorted.size()) != 0) continue;
      if (!seen.insert(sorted).second) continue;
      Node child{std::move(sorted), node.gens};
      child.gens.push_back(h);
      stack.push_back(std::move(child));
    }
  }
  return {found.begin(), found.end()};
}

Int isqrt_exact(const BigInt& v) {
  BigInt r = boost::multiprecision::sqrt(v);
  if (r * r != v) return -1;
  return to_int(r);
}

}  // namespace

std::vector<Overlattice> unimodular_overlattices(const IntegralLattice& lat, const Limits& limits) {
  const Int m = isqrt_exact(lat.det());
  if (m < 0) throw Error(ErrorCode::NotPerfectSquare, "det " + lat.det().str() + " is not a perfect square");
  const int n = lat.rank();
  if (m == 1) {
    return {Overlattice{lat, identity_matrix(n), 1, identity_matrix(n), 1}};
  }
  const Int det = lat.det_within(limits.det_cap);
  DiscriminantGroup group = discriminant_group(lat);
  std::vector<Overlattice> out;
  for (const auto& subgroup : isotropic_subgroups(group, m)) {
    // Scaled generators: det * e_i and adj * a for a in the subgroup.
    IntMatrix gens;
    for (int i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = det;
      gens.push_back(std::move(e));
    }
    for (std::size_t idx : subgroup) {
      if (idx == 0) continue;
      IntVec a = group.covector_of(group.element_at(idx));
      IntVec v(n);
      for (int i = 0; i < n; ++i) {
        BigInt s = 0;
        for (int j = 0; j < n; ++j) s += lat.adjugate()[i][j] * a[j];
        v[i] = to_int(s % det);
      }
      gens.push_back(std::move(v));
    }
    IntMatrix basis = hermite_mod(gens, n, det);
    IntMatrix gram(n, IntVec(n));
    const BigInt det2 = BigInt(det) * det;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        BigInt s = 0;
        for (int k = 0; k < n; ++k) {
          if (basis[i][k] == 0) continue;
          BigInt row = 0;
          for (int l = 0; l < n; ++l) row += BigInt(lat.gram()[k][l]) * basis[j][l];
          s += row * basis[i][k];
        }
        if (s % det2 != 0) throw Error(ErrorCode::BadInput, "overlattice is not integral");
        gram[i][j] = to_int(s / det2);
      }
    }
    // Old basis e_i = sum_j M_ij (basis_j / det); basis is upper triangular.
    IntMatrix inclusion(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) {
      std::vector<BigInt> target(n, 0);
      target[i] = det;
      for (int j = 0; j < n; ++j) {
        if (target[j] % basis[j][j] != 0) throw Error(ErrorCode::BadInput, "input is not contained in overlattice");
        BigInt coef = target[j] / basis[j][j];
        inclusion[i][j] = to_int(coef);
        for (int k = j; k < n; ++k) target[k] -= coef * basis[j][k];
      }
    }
    out.push_back(Overlattice{lattice_from_gram(std::move(gram)), std::move(basis), det, std::move(inclusion), m});
  }
  return out;
}

IntegralLattice dplus_lattice(int n) {
  if (n < 4 || n % 4 != 0) throw Error(ErrorCode::BadRank, "D_n^+ needs n divisible by 4, got " + std::to_string(n));
  // Basis {h, e2-e3, ..., e_{n-1}-e_n, e_{n-1}+e_n} with glue h = (1/2, ..., 1/2),
  // written at twice scale.
  IntMatrix rows;
  rows.push_back(IntVec(n, 1));
  for (int i = 1; i + 1 < n; ++i) {
    IntVec v(n, 0);
    v[i] = 2;
    v[i + 1] = -2;
    rows.push_back(std::move(v));
  }
  IntVec last(n, 0);
  last[n - 2] = 2;
  last[n - 1] = 2;
  rows.push_back(std::move(last));
  IntMatrix gram = multiply_transpose(rows, rows);
  for (auto& r : gram)
    for (auto& v : r) v /= 4;
  return lattice_from_gram(std::move(gram));
}

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
  return lattice_from_gram(block_diagonal(a.gram(), b.gram()));
}

}  // namespace dlat
