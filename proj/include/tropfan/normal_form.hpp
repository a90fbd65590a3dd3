#pragma once

#include <tropfan/field.hpp>
#include <tropfan/matrix.hpp>

#include <optional>
#include <vector>

namespace tropfan {

struct HermiteForm {
  IntMatrix H;  // H = M * U
  IntMatrix U;  // unimodular
  std::size_t rank = 0;            // nonzero columns of H, which come first
  std::vector<std::size_t> pivot_rows;
};

/// Column-style Hermite normal form.
///
/// Column j < rank has its first nonzero entry (positive) in pivot_rows[j],
/// the pivot rows increase, and the entries to the left of a pivot lie in
/// [0, pivot). Zero columns are moved to the end.
inline HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm f{m, IntMatrix::identity(m.cols()), 0, {}};
  IntMatrix& h = f.H;
  IntMatrix& u = f.U;
  const std::size_t n = m.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.rows() && k < n; ++i) {
    // Clear row i to the right of column k using 2x2 unimodular column operations.
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, k) == 0) {
        h.swap_columns(k, j);
        u.swap_columns(k, j);
        continue;
      }
      Integer s, t;
      const Integer a = h(i, k), b = h(i, j);
      const Integer g = gcdext(a, b, s, t);
      const Integer x = a / g, y = b / g;
      // [col_k col_j] <- [col_k col_j] * [[s, -y], [t, x]], determinant 1.
      for (IntMatrix* mat : {&h, &u}) {
        for (std::size_t r = 0; r < mat->rows(); ++r) {
          const Integer ck = (*mat)(r, k), cj = (*mat)(r, j);
          (*mat)(r, k) = s * ck + t * cj;
          (*mat)(r, j) = x * cj - y * ck;
        }
      }
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      h.negate_column(k);
      u.negate_column(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const Integer q = floor_div(h(i, j), h(i, k));
      if (q != 0) {
        h.add_column_multiple(j, k, -q);
        u.add_column_multiple(j, k, -q);
      }
    }
    f.pivot_rows.push_back(i);
    ++k;
  }
  f.rank = k;
  return f;
}

/// Canonical basis of the column lattice: the nonzero columns of the HNF.
inline IntMatrix lattice_basis(const IntMatrix& m) {
  const auto f = hermite_normal_form(m);
  return f.H.block(0, 0, m.rows(), f.rank);
}

struct SmithForm {
  IntMatrix S;      // S = U * M * V, diagonal with s_1 | s_2 | ...
  IntMatrix U, V;   // unimodular
  IntMatrix U_inv;  // inverse of U
  std::vector<Integer> diagonal;  // the nonzero diagonal entries, all positive
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.rows()), {}};
  IntMatrix& s = f.S;
  const std::size_t rows = m.rows(), cols = m.cols();

  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    s.add_row_multiple(dst, src, c);
    f.U.add_row_multiple(dst, src, c);
    f.U_inv.add_column_multiple(src, dst, -c);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    f.U.swap_rows(a, b);
    f.U_inv.swap_columns(a, b);
  };
  auto row_negate = [&](std::size_t a) {
    s.negate_row(a);
    f.U.negate_row(a);
    f.U_inv.negate_column(a);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    s.add_column_multiple(dst, src, c);
    f.V.add_column_multiple(dst, src, c);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    s.swap_columns(a, b);
    f.V.swap_columns(a, b);
  };

  bool exhausted = false;
  for (std::size_t t = 0; t < rows && t < cols && !exhausted; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        exhausted = true;
        break;
      }
      row_swap(t, pi);
      col_swap(t, pj);
      if (s(t, t) < 0) row_negate(t);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        row_add(i, t, -floor_div(s(i, t), s(t, t)));
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        col_add(j, t, -floor_div(s(t, j), s(t, t)));
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  const std::size_t r = std::min(rows, cols);
  for (std::size_t k = 0; k < r; ++k)
    if (s(k, k) != 0) f.diagonal.push_back(s(k, k));
  return f;
}

/// Basis of {x in Z^n : M x = 0}, in Hermite normal form.
inline IntMatrix kernel_lattice(const IntMatrix& m) {
  const auto f = hermite_normal_form(m);
  const IntMatrix k = f.U.block(0, f.rank, m.cols(), m.cols() - f.rank);
  return lattice_basis(k);
}

/// Saturation of the lattice spanned by independent columns.
inline IntMatrix saturate(const IntMatrix& b) {
  if (rank_rational(b) != b.cols()) throw Error("saturate: dependent columns");
  const IntMatrix orth = kernel_lattice(b.transpose());
  return kernel_lattice(orth.transpose());
}

/// Integer solution X of B X = C, or nullopt if none exists.
inline std::optional<IntMatrix> solve_integral(const IntMatrix& b, const IntMatrix& c) {
  if (b.rows() != c.rows()) throw Error("solve_integral: row mismatch");
  const auto f = hermite_normal_form(b);
  IntMatrix y(b.cols(), c.cols());
  for (std::size_t col = 0; col < c.cols(); ++col) {
    std::vector<Integer> res = c.column(col);
    for (std::size_t j = 0; j < f.rank; ++j) {
      const std::size_t pr = f.pivot_rows[j];
      if (res[pr] % f.H(pr, j) != 0) return std::nullopt;
      const Integer q = res[pr] / f.H(pr, j);
      y(j, col) = q;
      for (std::size_t i = pr; i < b.rows(); ++i) res[i] -= q * f.H(i, j);
    }
    for (const auto& x : res)
      if (x != 0) return std::nullopt;
  }
  return f.U * y;
}

/// Same as solve_integral, but failure is an internal error.
inline IntMatrix solve_integral_or_throw(const IntMatrix& b, const IntMatrix& c, const char* what) {
  auto x = solve_integral(b, c);
  if (!x) throw InternalError(std::string("no integral solution: ") + what);
  return *x;
}

inline bool lattice_contains(const IntMatrix& basis, const IntMatrix& vectors) {
  return solve_integral(basis, vectors).has_value();
}

}  // namespace tropfan
