#pragma once

// Lens spaces L(p, q) through the linear plumbing of the negative continued
// fraction of p/q. p = 1 stands for S^3 and gives the rank-0 lattice.

#include <utility>
#include <vector>

#include "dlat/diso.hpp"
#include "dlat/lattice.hpp"

namespace dlat {

struct ContFrac {
  Int p = 1;
  Int q = 1;
  IntVec coeffs;  // p/q = a1 - 1/(a2 - 1/(... - 1/ak)), every a_i >= 2
  bool operator==(const ContFrac&) const = default;
};

// Requires gcd(p, q) = 1 and p > q >= 1, or (p, q) = (1, 1) with empty coeffs.
ContFrac neg_cont_frac(Int p, Int q);
Rational evaluate(const ContFrac& cf);

IntegralLattice linear_plumbing(Int p, Int q);

struct PlumbingTree {
  IntVec weights;
  std::vector<std::pair<int, int>> edges;
};
IntegralLattice tree_plumbing(const PlumbingTree& t);

struct LensDTable {
  Int p = 1;
  Int q = 1;
  DTable table;
  IntVec labels;  // label of entry i in Z/p, via c1
};
// p must be odd.
LensDTable lens_d(Int p, Int q, const Limits& limits = {});

// For p = m^2 odd: classes whose c1 label lies in m Z/p.
std::vector<CharClass> subset_T(Int p, Int q, const Limits& limits = {});

// Witness for (X(L(p,q)), d) = (X(L(p,p-q)), -d). Throws NoWitness on failure.
TorsorIsoWitness orientation_reverse_check(Int p, Int q, const Limits& limits = {});

// m with m * m == p and m odd; throws NotOddSquare otherwise.
Int odd_square_root(Int p);

}  // namespace dlat
