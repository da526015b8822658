#pragma once

// The p-cyclically monotone polar of a finite operator.
//
// For z0 fixed, (z0, z0*) is in the polar iff for every p-tuple z1..zp of graph
// points  <z1 - z0, z0*> + sum_{i<p} <z_{i+1} - z_i, z_i*> + <z0 - zp, zp*> <= 0.
// Splitting <z0 - zp, zp*> = <z1 - zp, zp*> + <z0 - z1, zp*> gives one linear
// inequality in z0* per z1 in dom F:
//     <z0 - z1, z0*> >= M~(z0, z1),
//     M~(z0, z1) = max_{zp* in ran F} [ N~(z1, zp*) + <z0 - z1, zp*> ],
// where N~(z1, zp*) is the largest closed cyclic sum of a p-tuple that starts at
// z1 and whose last dual point is zp*.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/hpolyhedron.hpp"
#include "pcm/lp.hpp"
#include "pcm/operator.hpp"
#include "pcm/polyhedra.hpp"
#include "pcm/rational.hpp"

namespace pcm {

struct PolarQuery {
  FiniteOperator F;
  int p = 1;

  PolarQuery(FiniteOperator f, int p_) : F(std::move(f)), p(p_) {
    if (F.empty()) throw InputError("polar query needs a nonempty operator");
    check_cyclicity(p);
  }

  void require_dim(const QVector& v, const char* what) const {
    if (v.dim() != F.dim())
      throw InputError(std::string(what) + " has dimension " + std::to_string(v.dim()) +
                       ", operator has " + std::to_string(F.dim()));
  }
};

struct PolarMembership {
  bool verdict = true;
  Rational worst;
  std::optional<std::vector<PointPair>> witness;  // the maximising p-tuple, when verdict is false
};

/// Brute force over all p-tuples of F with (z0, z0*) prepended to the cycle.
inline PolarMembership polar_contains(const PolarQuery& q, const QVector& z0, const QVector& z0s) {
  q.require_dim(z0, "z0");
  q.require_dim(z0s, "z0*");
  const auto& pairs = q.F.pairs();
  const std::size_t n = pairs.size();
  const auto gram = detail::pair_gram(pairs);
  std::vector<Rational> enter(n), leave(n);
  for (std::size_t i = 0; i < n; ++i) {
    enter[i] = dot(pairs[i].x - z0, z0s);
    leave[i] = dot(z0 - pairs[i].x, pairs[i].xs);
  }

  PolarMembership res;
  std::vector<std::size_t> best;
  bool first = true;
  Rational s;
  const auto len = static_cast<std::size_t>(q.p);
  for (TupleEnumerator it(n, len); !it.done(); it.advance()) {
    auto ix = it.indices();
    s = enter[ix[0]];
    for (std::size_t k = 0; k + 1 < len; ++k) {
      s += gram[ix[k]][ix[k + 1]];
      s -= gram[ix[k]][ix[k]];
    }
    s += leave[ix[len - 1]];
    if (first || s > res.worst) {
      res.worst = s;
      best.assign(ix.begin(), ix.end());
      first = false;
    }
  }
  res.verdict = res.worst <= 0;
  if (!res.verdict) {
    std::vector<PointPair> w;
    for (auto i : best) w.push_back(pairs[i]);
    res.witness = std::move(w);
  }
  return res;
}

/// Per-z1 tables of N~(z1, zp*) for every zp* in ran F, computed once and then
/// re-evaluated at any z0. Uses a max-plus path product over the pair graph, so
/// the cost is polynomial in #F for fixed p.
class PolarFiberSystem {
 public:
  explicit PolarFiberSystem(PolarQuery q) : q_(std::move(q)) {
    domain_ = q_.F.domain();
    range_ = q_.F.range();
    if (q_.p >= 2) build();
  }

  const PolarQuery& query() const noexcept { return q_; }
  const std::vector<QVector>& domain() const noexcept { return domain_; }
  const std::vector<QVector>& range() const noexcept { return range_; }

  Rational n_tilde(const QVector& z1, const QVector& zps) const {
    require_reduction();
    const std::size_t a = domain_index(z1);
    const std::size_t b = range_index(zps);
    return table_[a][b];
  }

  Rational m_tilde(const QVector& z0, const QVector& z1) const {
    require_reduction();
    q_.require_dim(z0, "z0");
    return m_tilde_at(z0, domain_index(z1));
  }

  /// Right-hand sides and anchors of the fiber rows at z0, before the z1 = z0
  /// row is folded in: rows read <z0 - anchor, z0*> >= rhs.
  std::vector<std::pair<QVector, Rational>> anchored_rows(const QVector& z0) const {
    q_.require_dim(z0, "z0");
    std::vector<std::pair<QVector, Rational>> out;
    if (q_.p == 1) {
      for (const auto& pp : q_.F) out.emplace_back(pp.x, dot(z0 - pp.x, pp.xs));
      return out;
    }
    for (std::size_t a = 0; a < domain_.size(); ++a) out.emplace_back(domain_[a], m_tilde_at(z0, a));
    return out;
  }

  /// The fiber {z0* : (z0, z0*) in polar}. A row anchored at z0 itself reads
  /// 0 >= M~(z0, z0); it vanishes when that holds and makes the fiber empty otherwise.
  HPolyhedron fiber(const QVector& z0) const {
    std::vector<LinearInequality> rows;
    for (auto& [anchor, rhs] : anchored_rows(z0)) rows.push_back({z0 - anchor, rhs, Relation::ge});
    return HPolyhedron(q_.F.dim(), std::move(rows));
  }

 private:
  void require_reduction() const {
    if (q_.p < 2) throw InputError("N~ and M~ are defined for p >= 2 only");
  }

  std::size_t domain_index(const QVector& z1) const {
    q_.require_dim(z1, "z1");
    auto it = std::lower_bound(domain_.begin(), domain_.end(), z1);
    if (it == domain_.end() || *it != z1) throw DomainError("z1 = " + to_string(z1) + " is not in dom F");
    return static_cast<std::size_t>(it - domain_.begin());
  }

  std::size_t range_index(const QVector& zps) const {
    q_.require_dim(zps, "zp*");
    auto it = std::lower_bound(range_.begin(), range_.end(), zps);
    if (it == range_.end() || *it != zps) throw DomainError("zp* = " + to_string(zps) + " is not in ran F");
    return static_cast<std::size_t>(it - range_.begin());
  }

  Rational m_tilde_at(const QVector& z0, std::size_t a) const {
    const QVector shift = z0 - domain_[a];
    Rational best;
    for (std::size_t b = 0; b < range_.size(); ++b) {
      Rational v = table_[a][b] + dot(shift, range_[b]);
      if (b == 0 || v > best) best = v;
    }
    return best;
  }

  void build() {
    const auto& pairs = q_.F.pairs();
    const std::size_t n = pairs.size();
    const auto g = detail::pair_gram(pairs);
    // w[i][j] = <x_j - x_i, x_i*>, the cost of stepping from pair i to pair j.
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i][j] = g[i][j] - g[i][i];
    // path[i][j]: best sum along p-1 steps from pair i to pair j.
    auto path = w;
    for (int step = 2; step < q_.p; ++step) {
      std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Rational best = path[i][0] + w[0][j];
          for (std::size_t k = 1; k < n; ++k) {
            Rational v = path[i][k] + w[k][j];
            if (v > best) best = v;
          }
          next[i][j] = std::move(best);
        }
      path = std::move(next);
    }
    table_.assign(domain_.size(), std::vector<Rational>(range_.size()));
    std::vector<std::vector<bool>> seen(domain_.size(), std::vector<bool>(range_.size(), false));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = static_cast<std::size_t>(
          std::lower_bound(domain_.begin(), domain_.end(), pairs[i].x) - domain_.begin());
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t b = static_cast<std::size_t>(
            std::lower_bound(range_.begin(), range_.end(), pairs[j].xs) - range_.begin());
        Rational v = path[i][j] + w[j][i];
        if (!seen[a][b] || v > table_[a][b]) {
          table_[a][b] = std::move(v);
          seen[a][b] = true;
        }
      }
    }
  }

  PolarQuery q_;
  std::vector<QVector> domain_;
  std::vector<QVector> range_;
  std::vector<std::vector<Rational>> table_;  // [dom index][ran index] -> N~
};

inline Rational n_tilde(const PolarQuery& q, const QVector& z1, const QVector& zps) {
  return PolarFiberSystem(q).n_tilde(z1, zps);
}

inline Rational m_tilde(const PolarQuery& q, const QVector& z0, const QVector& z1) {
  return PolarFiberSystem(q).m_tilde(z0, z1);
}

inline HPolyhedron polar_fiber(const PolarQuery& q, const QVector& z0) {
  return PolarFiberSystem(q).fiber(z0);
}

/// Outcome of the Farkas-type domain test at z0.
///
/// inside_hull is false when z0 lies outside conv(dom F); such points are always
/// members and carry lp_value 0. Otherwise lp_value is the maximum of
/// sum lambda_r b_r over convex weights with sum lambda_r anchor_r = z0, and
/// lambda is the maximiser when that maximum is positive.
struct DomainCertificate {
  bool member = true;
  bool inside_hull = false;
  std::optional<std::vector<Rational>> lambda;
  Rational lp_value;
  std::vector<QVector> anchors;
  std::vector<Rational> rhs;
};

inline DomainCertificate domain_membership(const PolarFiberSystem& sys, const QVector& z0) {
  const auto rows = sys.anchored_rows(z0);
  const std::size_t d = z0.dim(), m = rows.size();
  DomainCertificate cert;
  for (const auto& [a, b] : rows) {
    cert.anchors.push_back(a);
    cert.rhs.push_back(b);
  }
  lp::StandardForm sf;
  sf.nvars = m;
  sf.rows.assign(d + 1, std::vector<Rational>(m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < d; ++k) sf.rows[k][r] = rows[r].first[k];
    sf.rows[d][r] = 1;
  }
  sf.rhs = z0.coords();
  sf.rhs.push_back(1);
  sf.cost = cert.rhs;
  auto res = lp::solve_standard(sf);
  if (res.status == LpStatus::infeasible) {
    cert.lp_value = 0;
    return cert;
  }
  if (res.status != LpStatus::optimal) throw std::logic_error("domain LP over a simplex cannot be unbounded");
  cert.inside_hull = true;
  cert.lp_value = res.value;
  cert.member = res.value <= 0;
  if (!cert.member) cert.lambda = res.x;
  return cert;
}

inline DomainCertificate domain_membership(const PolarQuery& q, const QVector& z0) {
  return domain_membership(PolarFiberSystem(q), z0);
}

/// Re-checks a certificate by arithmetic alone.
inline bool verify_domain_certificate(const DomainCertificate& c, const QVector& z0) {
  if (c.member) return !c.inside_hull || c.lp_value <= 0;
  if (!c.lambda || c.lambda->size() != c.anchors.size()) return false;
  Rational total = 0, value = 0;
  QVector point = QVector::zero(z0.dim());
  for (std::size_t r = 0; r < c.anchors.size(); ++r) {
    const Rational& l = (*c.lambda)[r];
    if (l < 0) return false;
    total += l;
    value += l * c.rhs[r];
    point += l * c.anchors[r];
  }
  return total == 1 && point == z0 && value == c.lp_value && value > 0;
}

}  // namespace pcm
