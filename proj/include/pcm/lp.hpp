#pragma once

// Exact two-phase tableau simplex (Bland's rule) and certified LP over H-polyhedra.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pcm/hpolyhedron.hpp"
#include "pcm/linalg.hpp"
#include "pcm/rational.hpp"

namespace pcm {

enum class LpStatus { optimal, unbounded, infeasible };
enum class Sense { minimize, maximize };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
  }
  return "?";
}

namespace lp {

/// maximize cost . x  subject to  rows x = rhs,  x >= 0.
struct StandardForm {
  std::size_t nvars = 0;
  linalg::Matrix rows;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;  // empty means pure feasibility
};

struct StandardResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;    // optimal
  std::vector<Rational> ray;  // unbounded: x + t*ray stays feasible, cost . ray > 0
  Rational value;
};

namespace detail {

class Tableau {
 public:
  Tableau(const StandardForm& lp) : n_(lp.nvars), m_(lp.rows.size()) {
    width_ = n_ + m_ + 1;
    t_.assign(m_, std::vector<Rational>(width_));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = lp.rhs[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? Rational(-lp.rows[i][j]) : lp.rows[i][j];
      t_[i][n_ + i] = 1;
      t_[i][rhs_col()] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
      basis_[i] = n_ + i;
    }
  }

  StandardResult solve(const std::vector<Rational>& cost) {
    StandardResult res;
    // Phase 1: drive the artificial columns to zero.
    std::vector<Rational> obj(width_ - 1);
    for (std::size_t i = 0; i < m_; ++i) obj[n_ + i] = -1;
    std::vector<bool> allowed(width_ - 1, true);
    std::size_t col;
    run(obj, allowed, col);
    if (objective_value(obj) < 0) {
      res.status = LpStatus::infeasible;
      return res;
    }
    // Pivot remaining artificials out; rows that cannot be pivoted are redundant.
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < n_ && t_[i][j] == 0) ++j;
      if (j < n_) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    // Phase 2.
    std::fill(obj.begin(), obj.end(), Rational(0));
    for (std::size_t j = 0; j < cost.size(); ++j) obj[j] = cost[j];
    for (std::size_t j = n_; j < width_ - 1; ++j) allowed[j] = false;
    bool bounded = run(obj, allowed, col);
    res.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) res.x[basis_[i]] = t_[i][rhs_col()];
    if (!bounded) {
      res.status = LpStatus::unbounded;
      res.ray.assign(n_, Rational(0));
      res.ray[col] = 1;
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] < n_) res.ray[basis_[i]] = -t_[i][col];
      return res;
    }
    res.status = LpStatus::optimal;
    res.value = 0;
    for (std::size_t j = 0; j < cost.size(); ++j) res.value += cost[j] * res.x[j];
    return res;
  }

 private:
  std::size_t rhs_col() const { return width_ - 1; }

  Rational objective_value(const std::vector<Rational>& obj) const {
    Rational v = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) v += obj[basis_[i]] * t_[i][rhs_col()];
    return v;
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j < width_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Maximises obj over the allowed columns. Returns false on unboundedness with
  // the entering column in `col`.
  bool run(const std::vector<Rational>& obj, const std::vector<bool>& allowed, std::size_t& col) {
    std::vector<bool> basic(width_ - 1);
    Rational d;
    for (;;) {
      std::fill(basic.begin(), basic.end(), false);
      for (auto b : basis_) basic[b] = true;
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_ && enter == width_; ++j) {
        if (!allowed[j] || basic[j]) continue;
        d = obj[j];
        for (std::size_t i = 0; i < basis_.size(); ++i)
          if (obj[basis_[i]] != 0 && t_[i][j] != 0) d -= obj[basis_[i]] * t_[i][j];
        if (d > 0) enter = j;
      }
      if (enter == width_) return true;
      std::size_t leave = basis_.size();
      Rational best;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][rhs_col()] / t_[i][enter];
        if (leave == basis_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == basis_.size()) {
        col = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  std::size_t n_, m_, width_;
  linalg::Matrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline StandardResult solve_standard(const StandardForm& lp) {
  if (lp.rhs.size() != lp.rows.size()) throw std::logic_error("standard form: rhs size");
  detail::Tableau tab(lp);
  return tab.solve(lp.cost);
}

}  // namespace lp

/// Result of an exact LP over an H-polyhedron.
///
/// Certificates (rows indexed as in HPolyhedron::rows(), s = +1 for minimise, -1
/// for maximise):
///  - optimal: multipliers y, y >= 0 on ">=" rows, with A^T y = s*c and <b, y> = s*value;
///  - infeasible: a Farkas ray y, y >= 0 on ">=" rows, with A^T y = 0 and <b, y> > 0;
///  - unbounded: a direction d feasible for the homogenised system with s*<c, d> < 0.
struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  std::optional<Rational> value;
  std::optional<QVector> point;
  std::optional<std::vector<Rational>> dual_certificate;
  std::optional<QVector> ray;
};

namespace lp::detail {

// Variables: y_i >= 0 for ">=" rows, y_i = yp_i - yn_i for "=" rows.
// Solves  A^T y = target,  <b, y> = bval.
inline std::optional<std::vector<Rational>> solve_multipliers(const HPolyhedron& h,
                                                              const QVector& target,
                                                              const Rational& bval) {
  const auto& rows = h.rows();
  std::vector<std::size_t> col_of(rows.size());
  std::size_t ncols = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    col_of[i] = ncols;
    ncols += rows[i].rel == Relation::eq ? 2 : 1;
  }
  StandardForm sf;
  sf.nvars = ncols;
  const std::size_t d = h.dim();
  sf.rows.assign(d + 1, std::vector<Rational>(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k <= d; ++k) {
      const Rational& coef = k < d ? rows[i].a[k] : rows[i].b;
      sf.rows[k][col_of[i]] = coef;
      if (rows[i].rel == Relation::eq) sf.rows[k][col_of[i] + 1] = -coef;
    }
  }
  sf.rhs = target.coords();
  sf.rhs.push_back(bval);
  auto res = solve_standard(sf);
  if (res.status != LpStatus::optimal) return std::nullopt;
  std::vector<Rational> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y[i] = res.x[col_of[i]];
    if (rows[i].rel == Relation::eq) y[i] -= res.x[col_of[i] + 1];
  }
  return y;
}

}  // namespace lp::detail

/// Solves min/max <objective, z> over z in `h` exactly. With `certificates` the
/// outcome carries the dual evidence described on LpOutcome.
inline LpOutcome lp_solve(const QVector& objective, const HPolyhedron& h, Sense sense,
                          bool certificates = true) {
  if (objective.dim() != h.dim()) throw InputError("lp_solve: objective dimension mismatch");
  const std::size_t d = h.dim();
  const auto& rows = h.rows();
  std::size_t nslack = 0;
  for (const auto& r : rows) nslack += r.rel == Relation::ge;

  // z = zp - zn, one surplus column per ">=" row.
  lp::StandardForm sf;
  sf.nvars = 2 * d + nslack;
  sf.rows.assign(rows.size(), std::vector<Rational>(sf.nvars));
  std::size_t slack = 2 * d;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      sf.rows[i][k] = rows[i].a[k];
      sf.rows[i][d + k] = -rows[i].a[k];
    }
    if (rows[i].rel == Relation::ge) sf.rows[i][slack++] = -1;
    sf.rhs.push_back(rows[i].b);
  }
  const Rational sign = sense == Sense::maximize ? 1 : -1;
  sf.cost.assign(sf.nvars, Rational(0));
  for (std::size_t k = 0; k < d; ++k) {
    sf.cost[k] = sign * objective[k];
    sf.cost[d + k] = -sign * objective[k];
  }

  auto res = lp::solve_standard(sf);
  LpOutcome out;
  out.status = res.status;
  if (res.status == LpStatus::infeasible) {
    if (certificates) {
      auto y = lp::detail::solve_multipliers(h, QVector::zero(d), Rational(1));
      if (!y) throw std::logic_error("lp_solve: Farkas system unexpectedly infeasible");
      out.dual_certificate = linalg::primitive(QVector(*y)).coords();
    }
    return out;
  }
  if (res.status == LpStatus::unbounded) {
    QVector dir(d);
    for (std::size_t k = 0; k < d; ++k) dir[k] = res.ray[k] - res.ray[d + k];
    out.ray = linalg::primitive(dir);
    return out;
  }
  QVector z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = res.x[k] - res.x[d + k];
  out.value = dot(objective, z);
  out.point = z;
  if (certificates) {
    // min: A^T y = c, <b,y> = value.  max: A^T y = -c, <b,y> = -value.
    const Rational s = sense == Sense::minimize ? 1 : -1;
    auto y = lp::detail::solve_multipliers(h, s * objective, s * *out.value);
    if (!y) throw std::logic_error("lp_solve: dual multipliers unexpectedly infeasible");
    out.dual_certificate = *y;
  }
  return out;
}

/// Re-checks an LpOutcome's evidence by pure arithmetic.
inline bool verify_lp_certificate(const LpOutcome& out, const QVector& objective,
                                  const HPolyhedron& h, Sense sense) {
  const auto& rows = h.rows();
  const std::size_t d = h.dim();
  auto combine = [&](const std::vector<Rational>& y, QVector& aty, Rational& by) {
    if (y.size() != rows.size()) return false;
    aty = QVector::zero(d);
    by = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].rel == Relation::ge && y[i] < 0) return false;
      aty += y[i] * rows[i].a;
      by += y[i] * rows[i].b;
    }
    return true;
  };
  QVector aty;
  Rational by;
  switch (out.status) {
    case LpStatus::infeasible:
      if (!out.dual_certificate || !combine(*out.dual_certificate, aty, by)) return false;
      return aty.is_zero() && by > 0;
    case LpStatus::optimal: {
      if (!out.point || !out.value || !h_contains(h, *out.point)) return false;
      if (dot(objective, *out.point) != *out.value) return false;
      if (!out.dual_certificate || !combine(*out.dual_certificate, aty, by)) return false;
      const Rational s = sense == Sense::minimize ? 1 : -1;
      return aty == s * objective && by == s * *out.value;
    }
    case LpStatus::unbounded: {
      if (!out.ray) return false;
      if (!h_contains(h.homogenized(), *out.ray)) return false;
      const Rational gain = dot(objective, *out.ray);
      return sense == Sense::minimize ? gain < 0 : gain > 0;
    }
  }
  return false;
}

}  // namespace pcm
