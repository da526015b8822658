#pragma once

// Exact dense linear algebra over the rationals (small systems only).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcm/rational.hpp"

namespace pcm::linalg {

using Matrix = std::vector<std::vector<Rational>>;

struct Echelon {
  Matrix rows;                     // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form over the first `ncols` columns; trailing columns
/// (an augmented right-hand side, say) are carried along but never pivoted on.
inline Echelon rref(Matrix m, std::size_t ncols) {
  Echelon out;
  std::size_t row = 0;
  const std::size_t nrows = m.size();
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t piv = row;
    while (piv < nrows && m[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(m[row], m[piv]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  // Keep rows that are nonzero anywhere (an inconsistent row 0 = c survives).
  for (std::size_t r = 0; r < nrows; ++r) {
    bool nz = false;
    for (const auto& v : m[r]) nz = nz || v != 0;
    if (r < row || nz) out.rows.push_back(std::move(m[r]));
  }
  return out;
}

inline std::size_t rank(const Matrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

inline Matrix to_matrix(const std::vector<QVector>& vs) {
  Matrix m;
  for (const auto& v : vs) m.push_back(v.coords());
  return m;
}

/// Basis of {x : A x = 0} for an A with `ncols` columns.
inline std::vector<QVector> nullspace(const Matrix& a, std::size_t ncols) {
  auto e = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// The unique solution of A x = b, or nullopt if the system is inconsistent or underdetermined.
inline std::optional<QVector> solve_unique(const Matrix& a, const std::vector<Rational>& b,
                                           std::size_t ncols) {
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto e = rref(std::move(aug), ncols);
  if (e.pivots.size() != ncols) return std::nullopt;
  if (e.rows.size() > ncols) return std::nullopt;  // a row 0 = c with c != 0
  QVector x(ncols);
  for (std::size_t r = 0; r < ncols; ++r) x[e.pivots[r]] = e.rows[r][ncols];
  return x;
}

/// Positive rescaling to coprime integers; the zero vector is returned unchanged.
inline QVector primitive(const QVector& v) {
  Integer l = 1;
  for (const auto& q : v)
    if (q != 0) l = boost::multiprecision::lcm(l, Integer(denominator(q)));
  Integer g = 0;
  for (const auto& q : v) {
    if (q == 0) continue;
    Integer n = numerator(q) * (l / denominator(q));
    g = g == 0 ? Integer(abs(n)) : Integer(boost::multiprecision::gcd(g, n));
  }
  if (g == 0) return v;
  QVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] * Rational(l) / Rational(g);
  return out;
}

/// Canonical basis of span(vs): the RREF rows, each made primitive.
inline std::vector<QVector> canonical_basis(const std::vector<QVector>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  auto e = rref(to_matrix(vs), dim);
  std::vector<QVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(primitive(QVector(e.rows[r])));
  return out;
}

/// Orthogonal projection of v onto the complement of span(basis).
inline QVector project_out(const QVector& v, const std::vector<QVector>& basis) {
  if (basis.empty()) return v;
  const std::size_t k = basis.size();
  Matrix gram(k, std::vector<Rational>(k));
  std::vector<Rational> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto coef = solve_unique(gram, rhs, k);
  QVector out = v;
  for (std::size_t i = 0; i < k; ++i) out -= (*coef)[i] * basis[i];
  return out;
}

}  // namespace pcm::linalg
