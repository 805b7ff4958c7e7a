#include "dlat/numeric.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

using Wide = __int128;

Int mulmod(Int a, Int b, Int m) {
  Wide r = static_cast<Wide>(a) * static_cast<Wide>(b) % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

Int addmod(Int a, Int b, Int m) {
  Wide r = (static_cast<Wide>(a) + static_cast<Wide>(b)) % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

// Checked 128-bit arithmetic for the Bareiss fast path.
struct Overflowed {};

Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflowed{};
  return r;
}

Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflowed{};
  return r;
}

BigInt to_big(Wide v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

template <typename T, typename Mul, typename Sub>
std::optional<Adjugate> bareiss_gauss_jordan(const IntMatrix& m, Mul mul, Sub sub,
                                             BigInt (*widen)(const T&)) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<T>> a(n, std::vector<T>(2 * n, T(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = T(m[i][j]);
    a[i][n + i] = T(1);
  }
  int sign = 1;
  bool pivoted = false;
  T prev(1);
  std::vector<BigInt> minors;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == T(0)) {
      int r = k + 1;
      while (r < n && a[r][k] == T(0)) ++r;
      if (r == n) {
        Adjugate singular;
        singular.det = 0;
        return singular;
      }
      std::swap(a[k], a[r]);
      sign = -sign;
      pivoted = true;
    }
    const T pivot = a[k][k];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const T factor = a[i][k];
      for (int j = 0; j < 2 * n; ++j) {
        a[i][j] = sub(mul(pivot, a[i][j]), mul(factor, a[k][j])) / prev;
      }
    }
    prev = pivot;
    minors.push_back(widen(pivot));
  }
  Adjugate out;
  out.det = widen(prev) * sign;
  out.adj.assign(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.adj[i][j] = widen(a[i][n + j]) * sign;
  }
  if (!pivoted) out.leading_minors = std::move(minors);
  return out;
}

BigInt widen_wide(const Wide& v) { return to_big(v); }
BigInt widen_big(const BigInt& v) { return v; }

}  // namespace

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

ExtGcd ext_gcd(Int x, Int y) {
  Int old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int gcd_int(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int to_int(const BigInt& v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw Error(ErrorCode::Overflow, "integer " + v.str() + " exceeds 64 bits");
  }
  return static_cast<Int>(v);
}

std::string to_string(const Rational& r) {
  return r.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::BadInput, "not a rational: '" + s + "'");
  }
}

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool is_square(const IntMatrix& m) {
  return std::all_of(m.begin(), m.end(), [&](const IntVec& r) { return r.size() == m.size(); });
}

bool is_symmetric(const IntMatrix& m) {
  if (!is_square(m)) return false;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const size_t inner = b.size();
  const size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(a.size(), IntVec(cols, 0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntMatrix multiply_transpose(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), IntVec(b.size(), 0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      if (a[i].size() != b[j].size()) throw Error(ErrorCode::DimensionMismatch, "row lengths differ");
      Int s = 0;
      for (size_t k = 0; k < a[i].size(); ++k) s += a[i][k] * b[j][k];
      c[i][j] = s;
    }
  }
  return c;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  const size_t n = a.size() + b.size();
  IntMatrix m(n, IntVec(n, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) m[i][j] = a[i][j];
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) m[a.size() + i][a.size() + j] = b[i][j];
  return m;
}

Adjugate adjugate(const IntMatrix& m) {
  if (!is_square(m)) throw Error(ErrorCode::DimensionMismatch, "adjugate of a non-square matrix");
  try {
    return *bareiss_gauss_jordan<Wide>(m, checked_mul, checked_sub, widen_wide);
  } catch (const Overflowed&) {
    auto mul = [](const BigInt& x, const BigInt& y) { return BigInt(x * y); };
    auto sub = [](const BigInt& x, const BigInt& y) { return BigInt(x - y); };
    return *bareiss_gauss_jordan<BigInt>(m, mul, sub, widen_big);
  }
}

BigInt determinant(const IntMatrix& m) {
  return adjugate(m).det;
}

IntMatrix hermite_mod(const IntMatrix& rows, int n, Int modulus) {
  if (modulus <= 0) throw Error(ErrorCode::BadInput, "hermite_mod needs a positive modulus");
  std::vector<IntVec> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw Error(ErrorCode::DimensionMismatch, "hermite_mod row");
    IntVec v(n);
    for (int j = 0; j < n; ++j) v[j] = mod_pos(r[j], modulus);
    work.push_back(std::move(v));
  }
  IntMatrix basis(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) {
    IntVec pivot(n, 0);
    for (auto& r : work) {
      if (r[i] == 0) continue;
      if (pivot[i] == 0) {
        std::swap(pivot, r);
        continue;
      }
      auto [g, a, b] = ext_gcd(pivot[i], r[i]);
      const Int rp = r[i] / g, pp = pivot[i] / g;
      IntVec np(n), nr(n);
      for (int j = 0; j < n; ++j) {
        np[j] = addmod(mulmod(a, pivot[j], modulus), mulmod(b, r[j], modulus), modulus);
        nr[j] = addmod(mulmod(rp, pivot[j], modulus), -mulmod(pp, r[j], modulus), modulus);
      }
      pivot = std::move(np);
      r = std::move(nr);
    }
    // Fold in modulus * e_i.
    auto [g, a, b] = ext_gcd(pivot[i], modulus);
    IntVec row(n, 0), rest(n, 0);
    for (int j = i + 1; j < n; ++j) {
      row[j] = mulmod(a, pivot[j], modulus);
      rest[j] = mulmod(modulus / g, pivot[j], modulus);
    }
    row[i] = g;
    basis[i] = std::move(row);
    if (std::any_of(rest.begin(), rest.end(), [](Int v) { return v != 0; })) work.push_back(std::move(rest));
    std::erase_if(work, [](const IntVec& r) { return std::all_of(r.begin(), r.end(), [](Int v) { return v == 0; }); });
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Int q = floor_div(basis[j][i], basis[i][i]);
      if (q == 0) continue;
      basis[j][i] -= q * basis[i][i];
      // modulus * e_k is in the lattice, so later entries may be taken mod it.
      for (int k = i + 1; k < n; ++k) basis[j][k] = addmod(basis[j][k], -mulmod(q, basis[i][k], modulus), modulus);
    }
  }
  return basis;
}

IntMatrix row_hermite(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "row_hermite rows differ in length");
  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
    // Euclid on column `col` among rows top.. until one nonzero entry remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || std::abs(rows[i][col]) < std::abs(rows[best][col]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        const Int q = rows[i][col] / rows[top][col];
        for (std::size_t k = col; k < n; ++k) rows[i][k] = checked_sub(rows[i][k], checked_mul(q, rows[top][k]));
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& v : rows[top]) v = -v;
    for (std::size_t i = 0; i < top; ++i) {
      const Int q = floor_div(rows[i][col], rows[top][col]);
      if (q == 0) continue;
      for (std::size_t k = col; k < n; ++k) rows[i][k] = checked_sub(rows[i][k], checked_mul(q, rows[top][k]));
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

namespace {

struct SmithState {
  int n;
  Int mod;
  IntMatrix a, q, qinv;

  void swap_cols(int x, int y) {
    for (auto& r : a) std::swap(r[x], r[y]);
    for (auto& r : q) std::swap(r[x], r[y]);
    std::swap(qinv[x], qinv[y]);
  }
  // col_y -= f * col_x
  void col_sub(int y, int x, Int f) {
    for (auto& r : a) r[y] = addmod(r[y], -mulmod(f, r[x], mod), mod);
    for (auto& r : q) r[y] = addmod(r[y], -mulmod(f, r[x], mod), mod);
    for (int j = 0; j < n; ++j) qinv[x][j] = addmod(qinv[x][j], mulmod(f, qinv[y][j], mod), mod);
  }
  void row_sub(int y, int x, Int f) {
    for (int j = 0; j < n; ++j) a[y][j] = addmod(a[y][j], -mulmod(f, a[x][j], mod), mod);
  }

  // Diagonalises a[k.., k..]; returns the pivot, or mod when the block is zero.
  Int reduce_from(int k) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (a[i][j] != 0 && (bi < 0 || a[i][j] < a[bi][bj])) bi = i, bj = j;
      if (bi < 0) return mod;
      std::swap(a[bi], a[k]);
      if (bj != k) swap_cols(bj, k);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (a[i][k] == 0) continue;
        row_sub(i, k, a[i][k] / a[k][k]);
        if (a[i][k] != 0) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        col_sub(j, k, a[k][j] / a[k][k]);
        if (a[k][j] != 0) clean = false;
      }
      if (clean) {
        Int g = gcd_int(a[k][k], mod);
        a[k][k] = g % mod;
        return g;
      }
    }
  }
};

}  // namespace

SmithForm smith_mod(const IntMatrix& rows, Int modulus) {
  if (!is_square(rows)) throw Error(ErrorCode::DimensionMismatch, "smith_mod needs a square matrix");
  if (modulus <= 0) throw Error(ErrorCode::BadInput, "smith_mod needs a positive modulus");
  const int n = static_cast<int>(rows.size());
  SmithState st{n, modulus, rows, identity_matrix(n), identity_matrix(n)};
  for (auto& r : st.a)
    for (auto& v : r) v = mod_pos(v, modulus);
  for (auto& r : st.q)
    for (auto& v : r) v = mod_pos(v, modulus);
  for (auto& r : st.qinv)
    for (auto& v : r) v = mod_pos(v, modulus);

  IntVec diag(n, modulus);
  int k = 0;
  for (; k < n; ++k) {
    diag[k] = st.reduce_from(k);
    if (diag[k] == modulus) break;
  }
  // Enforce the divisibility chain: diag(a, b) with a not dividing b is
  // repaired by adding row l to row k and re-diagonalising from k.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n && !changed; ++i) {
      for (int l = i + 1; l < n && !changed; ++l) {
        if (diag[l] % diag[i] == 0) continue;
        st.a[i][l] = diag[l] % modulus;
        for (int r = i; r < n; ++r) {
          diag[r] = st.reduce_from(r);
          if (diag[r] == modulus) {
            for (int s = r; s < n; ++s) diag[s] = modulus;
            break;
          }
        }
        changed = true;
      }
    }
  }
  return SmithForm{std::move(diag), std::move(st.q), std::move(st.qinv)};
}

}  // namespace dlat
