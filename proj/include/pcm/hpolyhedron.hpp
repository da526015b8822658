#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/linalg.hpp"
#include "pcm/rational.hpp"

namespace pcm {

enum class Relation { ge, eq };

inline const char* to_string(Relation r) { return r == Relation::ge ? ">=" : "="; }

/// <a, z> rel b.
struct LinearInequality {
  QVector a;
  Rational b;
  Relation rel = Relation::ge;

  bool satisfied_by(const QVector& z) const {
    Rational lhs = dot(a, z);
    return rel == Relation::ge ? lhs >= b : lhs == b;
  }

  /// Joint positive rescaling of (a, b) to coprime integers; equalities also get a
  /// positive leading coefficient.
  LinearInequality canonical() const {
    std::vector<Rational> joint(a.coords());
    joint.push_back(b);
    QVector scaled = linalg::primitive(QVector(std::move(joint)));
    LinearInequality out;
    out.rel = rel;
    out.b = scaled[a.dim()];
    out.a = QVector(std::vector<Rational>(scaled.begin(), scaled.begin() + a.dim()));
    if (rel == Relation::eq) {
      for (const auto& c : out.a) {
        if (c == 0) continue;
        if (c < 0) {
          out.a = -out.a;
          out.b = -out.b;
        }
        break;
      }
    }
    return out;
  }

  friend bool operator==(const LinearInequality& x, const LinearInequality& y) {
    return x.rel == y.rel && x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const LinearInequality& x, const LinearInequality& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.rel != y.rel) return x.rel < y.rel;
    return x.b < y.b;
  }
};

/// Intersection of finitely many half-spaces and hyperplanes. Rows are kept
/// canonical, deduplicated and sorted. Rows with a = 0 are dropped when they
/// hold trivially; a violated one collapses the system to the single row 0 >= 1.
class HPolyhedron {
 public:
  HPolyhedron() = default;
  explicit HPolyhedron(std::size_t dim) : dim_(dim) {}

  HPolyhedron(std::size_t dim, std::vector<LinearInequality> rows) : dim_(dim) {
    if (dim_ == 0) throw InputError("polyhedron dimension must be positive");
    bool infeasible = false;
    for (auto& r : rows) {
      if (r.a.dim() != dim_)
        throw InputError("row of dimension " + std::to_string(r.a.dim()) + " in a " +
                         std::to_string(dim_) + "-dimensional polyhedron");
      if (r.a.is_zero()) {
        bool ok = r.rel == Relation::ge ? r.b <= 0 : r.b == 0;
        infeasible = infeasible || !ok;
        continue;
      }
      rows_.push_back(r.canonical());
    }
    if (infeasible) {
      rows_.assign(1, LinearInequality{QVector::zero(dim_), Rational(1), Relation::ge});
      return;
    }
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<LinearInequality>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  /// True when a row reads 0 >= 1, i.e. infeasibility is evident without an LP.
  bool trivially_infeasible() const {
    return rows_.size() == 1 && rows_.front().a.is_zero();
  }

  HPolyhedron with(std::vector<LinearInequality> extra) const {
    auto all = rows_;
    all.insert(all.end(), extra.begin(), extra.end());
    return HPolyhedron(dim_, std::move(all));
  }

  /// Same rows with right-hand sides set to zero (the recession cone system).
  HPolyhedron homogenized() const {
    auto rs = rows_;
    for (auto& r : rs) r.b = 0;
    return HPolyhedron(dim_, std::move(rs));
  }

  friend bool operator==(const HPolyhedron& x, const HPolyhedron& y) {
    return x.dim_ == y.dim_ && x.rows_ == y.rows_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<LinearInequality> rows_;
};

/// Membership by exact evaluation of every row.
inline bool h_contains(const HPolyhedron& h, const QVector& z) {
  if (z.dim() != h.dim()) throw InputError("h_contains: dimension mismatch");
  return std::all_of(h.rows().begin(), h.rows().end(),
                     [&](const LinearInequality& r) { return r.satisfied_by(z); });
}

}  // namespace pcm
