#pragma once

#include <tropfan/matrix.hpp>
#include <tropfan/ring.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace tropfan {

namespace detail {

struct RationalArith {
  using value_type = Rational;
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) { return Rational(1) / x; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
  static Rational neg(const Rational& a) { return -a; }
  static Rational one() { return Rational(1); }
  static Rational zero() { return Rational(0); }
};

struct ModArith {
  using value_type = std::int64_t;
  std::int64_t p;
  bool is_zero(std::int64_t x) const { return x == 0; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p + p) % p; }
  std::int64_t neg(std::int64_t a) const { return (p - a) % p; }
  std::int64_t one() const { return 1 % p; }
  std::int64_t zero() const { return 0; }
  std::int64_t inverse(std::int64_t a) const {
    // a^(p-2) by square-and-multiply; p < 2^31 keeps products in range.
    std::int64_t r = 1, b = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

template <class Arith>
struct Echelon {
  std::vector<std::vector<typename Arith::value_type>> rows;  // reduced row echelon form
  std::vector<std::size_t> pivots;                            // pivot column of each nonzero row
  std::size_t cols = 0;
};

template <class Arith>
Echelon<Arith> reduce_rows(const Arith& ar, std::vector<std::vector<typename Arith::value_type>> m,
                           std::size_t cols) {
  Echelon<Arith> e;
  e.cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && ar.is_zero(m[piv][c])) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const auto inv = ar.inverse(m[r][c]);
    for (auto& x : m[r]) x = ar.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || ar.is_zero(m[i][c])) continue;
      const auto f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = ar.sub(m[i][j], ar.mul(f, m[r][j]));
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

template <class Arith>
std::vector<std::vector<typename Arith::value_type>> kernel_vectors(const Arith& ar, const Echelon<Arith>& e) {
  std::vector<bool> is_pivot(e.cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename Arith::value_type>> basis;
  for (std::size_t f = 0; f < e.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename Arith::value_type> x(e.cols, ar.zero());
    x[f] = ar.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = ar.neg(e.rows[i][f]);
    basis.push_back(std::move(x));
  }
  return basis;
}

inline std::vector<std::vector<Rational>> rational_rows(const RatMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
  return rows;
}

template <typename T>
std::vector<std::vector<std::int64_t>> residue_rows(const Matrix<T>& m, const RingTag& ring) {
  std::vector<std::vector<std::int64_t>> rows(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational v = ring.element(Rational(m(i, j)));
      rows[i][j] = v.get_num().get_si();
    }
  return rows;
}

inline Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer g = gcd(l, x.get_den());
    l = l / g * x.get_den();
  }
  return l;
}

/// Scales a rational vector to a primitive integer vector with the same direction.
inline IntVector primitive_integer_vector(const std::vector<Rational>& v) {
  const Integer l = lcm_of_denominators(v);
  IntVector r(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    r[i] = s.get_num();
    g = gcd(g, r[i]);
  }
  if (g > 1)
    for (auto& x : r) x /= g;
  return r;
}

}  // namespace detail

/// Rank over Q of a rational (or integer) matrix.
template <typename T>
std::size_t rank_rational(const Matrix<T>& m) {
  return detail::reduce_rows(detail::RationalArith{}, detail::rational_rows(matrix_cast<Rational>(m)), m.cols())
      .pivots.size();
}

/// Rank of the matrix interpreted over `ring` (over Z the rank equals the Q-rank).
template <typename T>
std::size_t rank_over(const Matrix<T>& m, const RingTag& ring) {
  if (!ring.is_prime_field()) return rank_rational(m);
  detail::ModArith ar{ring.prime()};
  return detail::reduce_rows(ar, detail::residue_rows(m, ring), m.cols()).pivots.size();
}

/// Entry-wise reduction into the ring: residues mod p over Fp, identity otherwise.
inline IntMatrix reduce_over(const IntMatrix& m, const RingTag& ring) {
  if (!ring.is_prime_field()) return m;
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = ring.reduce(m(i, j));
  return r;
}

/// Basis of the kernel over Fp, as residues in [0, p).
inline IntMatrix kernel_mod_p(const IntMatrix& m, const RingTag& ring) {
  detail::ModArith ar{ring.prime()};
  auto e = detail::reduce_rows(ar, detail::residue_rows(m, ring), m.cols());
  auto basis = detail::kernel_vectors(ar, e);
  IntMatrix k(m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j) = Integer(static_cast<long>(basis[j][i]));
  return k;
}

/// Kernel over Q, each basis vector scaled to a primitive integer vector.
template <typename T>
IntMatrix kernel_rational(const Matrix<T>& m) {
  detail::RationalArith ar;
  auto e = detail::reduce_rows(ar, detail::rational_rows(matrix_cast<Rational>(m)), m.cols());
  auto basis = detail::kernel_vectors(ar, e);
  IntMatrix k(m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) k.set_column(j, detail::primitive_integer_vector(basis[j]));
  return k;
}

/// Solves B X = C over Q. Returns nullopt when inconsistent; free variables are set to zero.
template <typename T>
std::optional<RatMatrix> solve_rational(const Matrix<T>& b, const Matrix<T>& c) {
  if (b.rows() != c.rows()) throw Error("solve: row mismatch");
  detail::RationalArith ar;
  auto aug = hcat(matrix_cast<Rational>(b), matrix_cast<Rational>(c));
  auto e = detail::reduce_rows(ar, detail::rational_rows(aug), aug.cols());
  RatMatrix x(b.cols(), c.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= b.cols()) return std::nullopt;
    for (std::size_t j = 0; j < c.cols(); ++j) x(e.pivots[i], j) = e.rows[i][b.cols() + j];
  }
  return x;
}

/// Solves B X = C over Fp (entries reduced). Returns nullopt when inconsistent.
inline std::optional<IntMatrix> solve_mod_p(const IntMatrix& b, const IntMatrix& c, const RingTag& ring) {
  if (b.rows() != c.rows()) throw Error("solve: row mismatch");
  detail::ModArith ar{ring.prime()};
  auto aug = hcat(b, c);
  auto e = detail::reduce_rows(ar, detail::residue_rows(aug, ring), aug.cols());
  IntMatrix x(b.cols(), c.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= b.cols()) return std::nullopt;
    for (std::size_t j = 0; j < c.cols(); ++j)
      x(e.pivots[i], j) = Integer(static_cast<long>(e.rows[i][b.cols() + j]));
  }
  return x;
}

/// Determinant over Q (square matrices only).
template <typename T>
Rational determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  auto a = matrix_cast<Rational>(m);
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      a.swap_rows(piv, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace tropfan
