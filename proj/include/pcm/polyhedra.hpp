#pragma once

// V-representations, hulls, vertex/ray enumeration, recession and normal cones.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/hpolyhedron.hpp"
#include "pcm/linalg.hpp"
#include "pcm/lp.hpp"
#include "pcm/rational.hpp"

namespace pcm {

/// conv(vertices) + cone(rays) + span(lineality).
///
/// Canonical form: lineality is the primitive RREF basis of its span; vertices and
/// rays are projected onto the orthogonal complement of the lineality space;
/// rays are primitive integer vectors; everything is sorted and deduplicated.
/// An empty vertex set means the empty set.
struct VPolyhedron {
  std::size_t dim = 0;
  std::vector<QVector> vertices;
  std::vector<QVector> rays;
  std::vector<QVector> lineality;

  bool empty() const noexcept { return vertices.empty(); }
  bool bounded() const noexcept { return rays.empty() && lineality.empty(); }

  VPolyhedron canonical() const {
    VPolyhedron out;
    out.dim = dim;
    out.lineality = linalg::canonical_basis(lineality, dim);
    for (const auto& v : vertices) out.vertices.push_back(linalg::project_out(v, out.lineality));
    for (const auto& r : rays) {
      QVector pr = linalg::project_out(r, out.lineality);
      if (!pr.is_zero()) out.rays.push_back(linalg::primitive(pr));
    }
    auto tidy = [](std::vector<QVector>& vs) {
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    };
    tidy(out.vertices);
    tidy(out.rays);
    return out;
  }

  friend bool operator==(const VPolyhedron& x, const VPolyhedron& y) {
    return x.dim == y.dim && x.vertices == y.vertices && x.rays == y.rays &&
           x.lineality == y.lineality;
  }
};

/// Generating points of a polytope C = conv(points); not necessarily irredundant.
class PolytopeHull {
 public:
  PolytopeHull() = default;
  explicit PolytopeHull(std::vector<QVector> points) : points_(std::move(points)) {
    if (points_.empty()) throw InputError("a polytope hull needs at least one point");
    for (const auto& p : points_)
      if (p.dim() != points_.front().dim()) throw InputError("hull points differ in dimension");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }
  const std::vector<QVector>& points() const noexcept { return points_; }

  friend bool operator==(const PolytopeHull& a, const PolytopeHull& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<QVector> points_;
};

/// Convex weights lambda over the hull points with sum lambda_i p_i = z, if any.
inline std::optional<std::vector<Rational>> hull_coefficients(const PolytopeHull& c,
                                                              const QVector& z) {
  c.points().front().require_same_dim(z);
  const auto& pts = c.points();
  lp::StandardForm sf;
  sf.nvars = pts.size();
  sf.rows.assign(z.dim() + 1, std::vector<Rational>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t k = 0; k < z.dim(); ++k) sf.rows[k][j] = pts[j][k];
    sf.rows[z.dim()][j] = 1;
  }
  sf.rhs = z.coords();
  sf.rhs.push_back(1);
  auto res = lp::solve_standard(sf);
  if (res.status == LpStatus::infeasible) return std::nullopt;
  return res.x;
}

inline bool hull_contains(const PolytopeHull& c, const QVector& z) {
  return hull_coefficients(c, z).has_value();
}

inline bool is_feasible(const HPolyhedron& h) {
  if (h.trivially_infeasible()) return false;
  return lp_solve(QVector::zero(h.dim()), h, Sense::minimize, false).status != LpStatus::infeasible;
}

namespace detail {

/// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Exact V-representation by exhaustive enumeration.
///
/// The lineality space is the kernel of all row normals. Vertices are the
/// feasible unique solutions of (equalities, lineality-orthogonality, and
/// dim - rank of those many tight inequality rows); extreme rays come from the
/// homogenised system the same way with one degree of freedom left.
inline VPolyhedron vertices_and_rays(const HPolyhedron& h) {
  const std::size_t d = h.dim();
  VPolyhedron out;
  out.dim = d;
  if (!is_feasible(h)) return out;

  std::vector<QVector> normals;
  linalg::Matrix eq_a;
  std::vector<Rational> eq_b;
  std::vector<const LinearInequality*> ineq;
  for (const auto& r : h.rows()) {
    normals.push_back(r.a);
    if (r.rel == Relation::eq) {
      eq_a.push_back(r.a.coords());
      eq_b.push_back(r.b);
    } else {
      ineq.push_back(&r);
    }
  }
  out.lineality = linalg::canonical_basis(
      normals.empty() ? linalg::nullspace(linalg::Matrix{}, d)
                      : linalg::nullspace(linalg::to_matrix(normals), d),
      d);
  for (const auto& l : out.lineality) {
    eq_a.push_back(l.coords());
    eq_b.push_back(0);
  }
  const std::size_t r = linalg::rank(eq_a, d);

  if (r <= d) {
    const std::size_t k = d - r;
    detail::for_each_subset(ineq.size(), k, [&](const std::vector<std::size_t>& sub) {
      auto a = eq_a;
      auto b = eq_b;
      for (auto i : sub) {
        a.push_back(ineq[i]->a.coords());
        b.push_back(ineq[i]->b);
      }
      if (auto z = linalg::solve_unique(a, b, d); z && h_contains(h, *z)) out.vertices.push_back(*z);
    });
  }
  if (r + 1 <= d) {
    const std::size_t k = d - r - 1;
    detail::for_each_subset(ineq.size(), k, [&](const std::vector<std::size_t>& sub) {
      auto a = eq_a;
      for (auto i : sub) a.push_back(ineq[i]->a.coords());
      auto ker = linalg::nullspace(a, d);
      if (ker.size() != 1) return;
      for (int sgn : {1, -1}) {
        QVector v = Rational(sgn) * ker.front();
        bool ok = std::all_of(ineq.begin(), ineq.end(),
                              [&](const LinearInequality* row) { return dot(row->a, v) >= 0; });
        if (ok) out.rays.push_back(linalg::primitive(v));
      }
    });
  }
  return out.canonical();
}

/// Recession cone {d : x + t d in H for all t >= 0} as rays and lineality (vertex = origin).
inline VPolyhedron recession_cone(const HPolyhedron& h) {
  if (!is_feasible(h)) throw DomainError("recession_cone: polyhedron is empty");
  return vertices_and_rays(h.homogenized());
}

/// N_C(x0) = {z : <p - x0, z> <= 0 for every generating point p}.
inline HPolyhedron normal_cone_at(const PolytopeHull& c, const QVector& x0) {
  if (!hull_contains(c, x0)) throw DomainError("normal_cone_at: point " + to_string(x0) + " is outside the hull");
  std::vector<LinearInequality> rows;
  for (const auto& p : c.points()) rows.push_back({x0 - p, Rational(0), Relation::ge});
  return HPolyhedron(x0.dim(), std::move(rows));
}

/// Membership in a V-polyhedron, decided by LP over the combination weights.
inline bool v_contains(const VPolyhedron& v, const QVector& z) {
  if (v.empty()) return false;
  const std::size_t d = v.dim;
  const std::size_t nv = v.vertices.size(), nr = v.rays.size(), nl = v.lineality.size();
  lp::StandardForm sf;
  sf.nvars = nv + nr + 2 * nl;
  sf.rows.assign(d + 1, std::vector<Rational>(sf.nvars));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < nv; ++j) sf.rows[k][j] = v.vertices[j][k];
    for (std::size_t j = 0; j < nr; ++j) sf.rows[k][nv + j] = v.rays[j][k];
    for (std::size_t j = 0; j < nl; ++j) {
      sf.rows[k][nv + nr + 2 * j] = v.lineality[j][k];
      sf.rows[k][nv + nr + 2 * j + 1] = -v.lineality[j][k];
    }
  }
  for (std::size_t j = 0; j < nv; ++j) sf.rows[d][j] = 1;
  sf.rhs = z.coords();
  sf.rhs.push_back(1);
  return lp::solve_standard(sf).status != LpStatus::infeasible;
}

/// Unique minimal description: implicit equalities extracted and put in canonical
/// RREF form, remaining inequalities reduced modulo the equalities, redundant
/// rows removed (one LP per row). Empty polyhedra map to the single row 0 >= 1.
inline HPolyhedron reduce(const HPolyhedron& h) {
  const std::size_t d = h.dim();
  if (!is_feasible(h)) return HPolyhedron(d, {LinearInequality{QVector::zero(d), Rational(1), Relation::ge}});

  std::vector<LinearInequality> eqs, ineqs;
  for (const auto& r : h.rows()) {
    if (r.rel == Relation::eq) {
      eqs.push_back(r);
      continue;
    }
    // Implicit equality: the row is tight on all of H, i.e. its maximum is b.
    auto res = lp_solve(r.a, h, Sense::maximize, false);
    if (res.status == LpStatus::optimal && *res.value == r.b)
      eqs.push_back({r.a, r.b, Relation::eq});
    else
      ineqs.push_back(r);
  }

  // Equalities in RREF over [a | b].
  linalg::Matrix aug;
  for (const auto& e : eqs) {
    auto row = e.a.coords();
    row.push_back(e.b);
    aug.push_back(std::move(row));
  }
  auto ech = linalg::rref(aug, d);
  std::vector<LinearInequality> out;
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    const auto& row = ech.rows[i];
    out.push_back({QVector(std::vector<Rational>(row.begin(), row.begin() + d)), row[d], Relation::eq});
  }
  const std::size_t neq = out.size();
  for (auto r : ineqs) {
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      const Rational f = r.a[ech.pivots[i]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < d; ++k) r.a[k] -= f * ech.rows[i][k];
      r.b -= f * ech.rows[i][d];
    }
    if (!r.a.is_zero()) out.push_back(r.canonical());
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(neq), out.end());
  out.erase(std::unique(out.begin() + static_cast<std::ptrdiff_t>(neq), out.end()), out.end());

  for (std::size_t i = neq; i < out.size();) {
    std::vector<LinearInequality> others(out.begin(), out.end());
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    auto res = lp_solve(out[i].a, HPolyhedron(d, others), Sense::minimize, false);
    if (res.status == LpStatus::optimal && *res.value >= out[i].b)
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return HPolyhedron(d, std::move(out));
}

}  // namespace pcm
