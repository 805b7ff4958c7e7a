#pragma once

// Positive-definite integral lattices, their characteristic cosets and
// d-invariants.
//
// A lattice is given by its Gram matrix G in some basis. Covectors (elements of
// the dual lattice) are written by their values on the basis, so the dual is
// Z^n, the lattice itself sits inside it as G Z^n, and the pairing of two
// covectors a, b is a^T G^{-1} b. Throughout, "norm" means this squared norm.
//
// A covector c is characteristic when c_i = G_ii (mod 2) for every i. Char(L)
// modulo 2L is a torsor over the discriminant group L^* / L; its elements are
// represented by CharClass. For every class x,
//
//     d(x) = (min { c^T G^{-1} c : c in x } - rank) / 4.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "dlat/numeric.hpp"

namespace dlat {

struct Limits {
  Int det_cap = 100000;               // largest det for which classes are enumerated
  std::uint64_t budget_nodes = 10'000'000;  // embedding search node cap
  Int group_cap = 4000;               // largest discriminant group for isomorphism search
  unsigned threads = 0;               // 0: hardware concurrency
};

class IntegralLattice {
 public:
  // Validates symmetry and positive definiteness. The empty matrix is the
  // rank-0 lattice (det 1), used for S^3.
  static IntegralLattice from_gram(IntMatrix gram);

  int rank() const { return static_cast<int>(impl_->gram.size()); }
  const IntMatrix& gram() const { return impl_->gram; }
  const BigInt& det() const { return impl_->det; }
  // det as a machine integer; throws DetTooLarge above `cap`.
  Int det_within(Int cap) const;
  const BigMatrix& adjugate() const { return impl_->adj; }  // det * G^{-1}
  RationalMatrix gram_inverse() const;

  // a^T G^{-1} b, exactly.
  Rational dual_pairing(const IntVec& a, const IntVec& b) const;
  // a^T adj(G) b as an integer.
  BigInt adj_pairing(const IntVec& a, const IntVec& b) const;

  bool is_unimodular() const { return impl_->det == 1; }
  bool operator==(const IntegralLattice& o) const { return gram() == o.gram(); }

 private:
  struct Impl {
    IntMatrix gram;
    BigInt det;
    BigMatrix adj;
  };
  explicit IntegralLattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

IntegralLattice lattice_from_gram(IntMatrix gram);

// L^* / L with its linking form b(a, b) = a^T G^{-1} b mod 1.
struct DiscriminantGroup {
  IntVec orders;            // invariant factors > 1, each dividing the next
  IntMatrix generators;     // covector of each cyclic generator
  IntMatrix coordinate_map; // n x r: covector c maps to (c * map)_i mod orders[i]
  RationalMatrix linking;   // b(g_i, g_j) in [0, 1)
  IntVec base_char;         // characteristic covector defining quadratic_refinement

  Int order() const;
  std::size_t rank() const { return orders.size(); }
  IntVec element_of(const IntVec& covector) const;
  IntVec covector_of(const IntVec& element) const;
  Rational linking_form(const IntVec& a, const IntVec& b) const;  // mod 1
  // q(a) = a^T G^{-1} a + a^T G^{-1} base_char mod 2; refines twice the linking form.
  Rational quadratic_refinement(const IntegralLattice& lat, const IntVec& a) const;
  // Mixed-radix index of an element, and back.
  std::size_t index_of(const IntVec& element) const;
  IntVec element_at(std::size_t index) const;
};

DiscriminantGroup discriminant_group(const IntegralLattice& lat);

struct CharClass {
  IntVec rep;  // canonical representative
  bool operator==(const CharClass&) const = default;
  auto operator<=>(const CharClass&) const = default;
};

bool is_characteristic(const IntegralLattice& lat, const IntVec& c);
// Canonical representative of the class of characteristic covector c.
CharClass canonical_class(const IntegralLattice& lat, const IntVec& c, Int det_cap = Limits{}.det_cap);
// All det(L) classes, in lexicographic order of canonical representative.
std::vector<CharClass> char_classes(const IntegralLattice& lat, Int det_cap = Limits{}.det_cap);

Rational min_char_norm(const IntegralLattice& lat, const CharClass& x);

struct DEntry {
  CharClass cls;
  Rational min_norm;
  Rational d;
  bool operator==(const DEntry&) const = default;
};

struct DTable {
  Int det = 1;
  int rank = 0;
  std::vector<DEntry> entries;  // aligned with char_classes order

  std::optional<std::size_t> find(const CharClass& x) const;
  Rational total() const;
  bool operator==(const DTable&) const = default;
};

DTable d_table(const IntegralLattice& lat, const Limits& limits = {});

CharClass conjugate(const IntegralLattice& lat, const CharClass& x);
// Conjugates of many classes, sharing the reduction basis.
std::vector<CharClass> conjugates(const IntegralLattice& lat, const std::vector<CharClass>& xs,
                                  Int det_cap = Limits{}.det_cap);

// c1([chi]) = chi mod L, defined for odd determinant where it is a bijection
// X(L) -> L^*/L. Returned in the coordinates of `group`.
IntVec c1_image(const IntegralLattice& lat, const DiscriminantGroup& group, const CharClass& x);

struct Overlattice {
  IntegralLattice lattice;
  IntMatrix basis;      // new basis in old coordinates, scaled by `denominator`
  Int denominator = 1;
  IntMatrix inclusion;  // old basis vector i = sum_j inclusion[i][j] * new basis vector j
  Int index = 1;
};

// Unimodular lattices L' with L <= L' <= L^* (isotropic subgroups of order m,
// det(L) = m^2), in a deterministic order.
std::vector<Overlattice> unimodular_overlattices(const IntegralLattice& lat, const Limits& limits = {});

IntegralLattice dplus_lattice(int n);
IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);

// Exhaustive scan over characteristic covectors with entries in
// [-radius, radius]. Throws BoxTooSmall unless the box certifies every minimum.
DTable brute_force_d_table(const IntegralLattice& lat, Int radius, Int det_cap = Limits{}.det_cap);

}  // namespace dlat
