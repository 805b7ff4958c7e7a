#pragma once

// Shortest covector in a coset c + 2 G Z^n.
//
// Writing c = x + 2 G v, the norm is x^T G^{-1} x + 4 f(v) with the integer
// quadratic f(v) = v^T G v + x^T v. We minimise f by depth-first enumeration on
// an LDL^T factorisation, fixing coordinates from the last to the first. Bounds
// are compared with a slack of 1/2, which is safe since f is integral. Subtrees
// whose value only depends on a few fixed coordinates (the elimination frontier)
// are memoised, which keeps chains with many equal minima polynomial.

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dlat/numeric.hpp"

namespace dlat::detail {

class MinNormSearch {
 public:
  explicit MinNormSearch(const IntMatrix& gram);

  struct Result {
    IntVec center;  // covector x in the input coset, locally reduced
    Int f_min = 0;  // min over v of f(v); the minimal norm is |x|^2 + 4 f_min
  };
  Result minimise(const IntVec& c) const;

 private:
  static constexpr int kMaxFrontier = 3;
  using Key = std::array<Int, kMaxFrontier>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull;
      for (Int v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };
  struct Memo {
    bool exact = false;
    Int value = 0;  // exact minimum, or a strict lower bound when !exact
  };
  struct State;

  Int search(State& s, int level, double beta, Int budget) const;
  Int expand(State& s, int level, double beta, Int budget) const;

  int n_;
  IntMatrix gram_;
  std::vector<double> diag_;                                   // D of LDL^T
  std::vector<std::vector<std::pair<int, double>>> lcol_;      // (j, L_ji) for j > i
  std::vector<std::vector<std::pair<int, Int>>> gupper_;       // (j, G_ij) for j > i
  std::vector<std::vector<std::pair<int, Int>>> gall_;         // (j, G_ij) for j != i
  std::vector<std::vector<int>> frontier_;                     // per level; empty vector if not memoised
  std::vector<bool> memoised_;
};

}  // namespace dlat::detail
