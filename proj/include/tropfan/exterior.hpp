#pragma once

#include <tropfan/field.hpp>
#include <tropfan/matrix.hpp>

#include <vector>

namespace tropfan {

using IndexSet = std::vector<std::size_t>;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All p-subsets of {0, ..., n-1} in lexicographic order. This order indexes
/// the wedge monomials e_S of the p-th exterior power.
inline std::vector<IndexSet> lex_subsets(std::size_t n, std::size_t p) {
  std::vector<IndexSet> out;
  if (p > n) return out;
  IndexSet s(p);
  for (std::size_t i = 0; i < p; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    std::size_t i = p;
    while (i > 0 && s[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < p; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

/// Position of a sorted subset in lex_subsets(n, |s|).
inline std::size_t lex_index(std::size_t n, const IndexSet& s) {
  std::size_t idx = 0, prev = 0;
  const std::size_t p = s.size();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t v = (i == 0 ? 0 : prev + 1); v < s[i]; ++v) idx += binomial(n - v - 1, p - i - 1);
    prev = s[i];
  }
  return idx;
}

/// Columns are b_S = wedge of the columns of B indexed by S, for p-subsets S
/// in lex order, written in wedge-monomial coordinates (p x p minors).
inline IntMatrix wedge_basis(const IntMatrix& b, std::size_t p) {
  const std::size_t n = b.rows(), k = b.cols();
  if (p > k) throw Error("wedge_basis: degree exceeds the number of vectors");
  const auto rows = lex_subsets(n, p);
  const auto cols = lex_subsets(k, p);
  IntMatrix w(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const IntMatrix sub = b.select_columns(cols[j]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      w(i, j) = p == 0 ? Integer(1) : determinant(sub.select_rows(rows[i])).get_num();
  }
  return w;
}

/// Sign and result of the basis contraction f_K ⌟ e_J. Returns false when K is
/// not contained in J.
inline bool contract_monomial(const IndexSet& k, const IndexSet& j, int& sign, IndexSet& rest) {
  rest.clear();
  std::size_t found = 0;
  for (auto x : j) {
    if (found < k.size() && k[found] == x)
      ++found;
    else
      rest.push_back(x);
  }
  if (found != k.size()) return false;
  std::size_t v = 0;
  for (auto lambda : k)
    for (auto mu : rest)
      if (lambda > mu) ++v;
  const std::size_t p1 = k.size();
  sign = ((v + p1 * (p1 - 1) / 2) % 2 == 0) ? 1 : -1;
  return true;
}

/// Contraction of x in the p1-th exterior power of the dual with y in the
/// p2-th exterior power, both in lex monomial coordinates over a rank-m lattice.
template <typename T>
std::vector<T> contract(const std::vector<T>& x, std::size_t p1, const std::vector<T>& y, std::size_t p2,
                        std::size_t m) {
  if (p1 > p2 || p2 > m || x.size() != binomial(m, p1) || y.size() != binomial(m, p2))
    throw Error("contract: degree mismatch");
  const auto ks = lex_subsets(m, p1);
  const auto js = lex_subsets(m, p2);
  std::vector<T> out(binomial(m, p2 - p1), T(0));
  IndexSet rest;
  int sign = 1;
  for (std::size_t a = 0; a < ks.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < js.size(); ++b) {
      if (y[b] == 0 || !contract_monomial(ks[a], js[b], sign, rest)) continue;
      out[lex_index(m, rest)] += T(sign) * x[a] * y[b];
    }
  }
  return out;
}

/// Matrix of u ↦ u ⌟ e_{0..m-1}: columns indexed by p-subsets K (coordinates
/// of the dual monomial f_K), rows by (m-p)-subsets.
inline IntMatrix contraction_with_top(std::size_t m, std::size_t p) {
  const auto ks = lex_subsets(m, p);
  IndexSet top(m);
  for (std::size_t i = 0; i < m; ++i) top[i] = i;
  IntMatrix c(binomial(m, m - p), ks.size());
  IndexSet rest;
  int sign = 1;
  for (std::size_t a = 0; a < ks.size(); ++a)
    if (contract_monomial(ks[a], top, sign, rest)) c(lex_index(m, rest), a) = sign;
  return c;
}

}  // namespace tropfan
