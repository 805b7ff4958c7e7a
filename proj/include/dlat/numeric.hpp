#pragma once

// Integer and rational matrix primitives shared by every module: exact
// determinants and adjugates, and Hermite/Smith normal forms computed modulo a
// multiple of the determinant so that entries stay machine-sized.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dlat {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMatrix = std::vector<IntVec>;  // row-major, rows of equal length

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using BigMatrix = std::vector<std::vector<BigInt>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// Floor division and non-negative remainder for a positive modulus.
Int floor_div(Int a, Int b);
Int mod_pos(Int a, Int m);

struct ExtGcd {
  Int g;  // >= 0
  Int a;
  Int b;  // a*x + b*y == g
};
ExtGcd ext_gcd(Int x, Int y);

Int gcd_int(Int a, Int b);

// Exact narrowing; throws Overflow when the value does not fit.
Int to_int(const BigInt& v);

// "p/q" or "p" for integers; parse accepts both.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

IntMatrix identity_matrix(int n);
bool is_square(const IntMatrix& m);
bool is_symmetric(const IntMatrix& m);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
// a * b^T, the Gram matrix of the rows of a against the rows of b.
IntMatrix multiply_transpose(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

// Fraction-free Gauss-Jordan elimination on [M | I]. `leading_minors` holds the
// leading principal minors when no pivoting was necessary (empty otherwise).
struct Adjugate {
  BigInt det;
  BigMatrix adj;  // det * M^{-1}; empty when det == 0
  std::vector<BigInt> leading_minors;
};
Adjugate adjugate(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);

// Hermite normal form of the row lattice generated by `rows` together with
// modulus * Z^n (which must already lie in that lattice). Returns an upper
// triangular n x n basis with positive pivots and 0 <= b[j][i] < b[i][i] for j < i.
IntMatrix hermite_mod(const IntMatrix& rows, int n, Int modulus);

// Row-style Hermite normal form of the lattice spanned by `rows` (any rank):
// nonzero rows only, echelon with positive pivots, entries above each pivot
// reduced into [0, pivot). Two generator sets span the same lattice iff their
// forms are equal.
IntMatrix row_hermite(IntMatrix rows);

// Smith form of the quotient Z^n / (rowspan(rows) + modulus * Z^n). The map
// x -> x * col_transform (mod diag) identifies the quotient with the direct sum
// of Z/diag[i]; row i of col_inverse is a covector projecting onto the i-th
// standard generator. diag is non-decreasing under divisibility.
struct SmithForm {
  IntVec diag;
  IntMatrix col_transform;
  IntMatrix col_inverse;
};
SmithForm smith_mod(const IntMatrix& rows, Int modulus);

}  // namespace dlat
