#pragma once

// Iterative construction: each domain point's image is replaced by the vertex
// set of the current polar fiber there.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/operator.hpp"
#include "pcm/polar.hpp"
#include "pcm/polyhedra.hpp"

namespace pcm {

struct ConstructionStep {
  std::size_t k = 0;  // 1-based
  QVector xk;
  HPolyhedron fiber_h;
  std::vector<QVector> Ek;
  std::vector<QVector> rays;
  std::vector<QVector> lineality;
  bool pmono_after = false;
  bool rays_match_normal_cone = false;
};

struct ConstructionTrace {
  FiniteOperator seed;
  int p = 1;
  std::vector<ConstructionStep> steps;
  FiniteOperator final_F;
  PolytopeHull hull;
  // final_fibers_match[k]: the fiber of the final operator at x_k equals co(E_k) + rays.
  std::vector<bool> final_fibers_match;

  bool all_checks_pass() const {
    for (const auto& s : steps)
      if (!s.pmono_after || !s.rays_match_normal_cone) return false;
    for (bool b : final_fibers_match)
      if (!b) return false;
    return true;
  }
};

inline FiniteOperator replace_image(const FiniteOperator& F, const QVector& x, const std::vector<QVector>& images) {
  std::vector<PointPair> out;
  for (const auto& pp : F)
    if (pp.x != x) out.push_back(pp);
  for (const auto& v : images) out.emplace_back(x, v);
  return FiniteOperator(F.dim(), std::move(out));
}

struct ConstructOptions {
  // Processing order of the domain points; empty means lexicographic.
  std::vector<QVector> order;
  bool require_monotone_seed = true;
};

inline ConstructionTrace construct(const FiniteOperator& seed, int p, const ConstructOptions& opt = {}) {
  check_cyclicity(p);
  if (seed.empty()) throw InputError("construct needs a nonempty seed");
  if (opt.require_monotone_seed) {
    auto mono = is_p_mono(seed, p);
    if (!mono.verdict)
      throw ConstructionError("seed is not " + std::to_string(p) + "-cyclically monotone (max cyclic sum " +
                              to_string(mono.max_sum) + ")");
  }

  ConstructionTrace tr;
  tr.seed = seed;
  tr.p = p;
  auto dom = seed.domain();
  tr.hull = PolytopeHull(dom);
  if (!opt.order.empty()) {
    auto sorted = opt.order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != dom)
      throw InputError("processing order must list every seed domain point exactly once");
    dom = opt.order;
  }
  FiniteOperator cur = seed;

  for (std::size_t i = 0; i < dom.size(); ++i) {
    ConstructionStep st;
    st.k = i + 1;
    st.xk = dom[i];
    st.fiber_h = polar_fiber(PolarQuery(cur, p), st.xk);
    const VPolyhedron v = vertices_and_rays(st.fiber_h);
    if (v.empty())
      throw ConstructionError("empty polar fiber at " + to_string(st.xk) + "; the current operator is not monotone");
    st.rays = v.rays;
    st.lineality = v.lineality;
    if (!v.lineality.empty()) {
      if (dom.size() >= 2)
        throw ConstructionError("fiber at " + to_string(st.xk) +
                                " has a nontrivial lineality space (is conv(dom) lower-dimensional?)");
      st.Ek = image(cur, st.xk);
    } else {
      st.Ek = v.vertices;
    }
    cur = replace_image(cur, st.xk, st.Ek);
    st.pmono_after = is_p_mono(cur, p).verdict;
    const VPolyhedron nc = vertices_and_rays(normal_cone_at(tr.hull, st.xk));
    st.rays_match_normal_cone = nc.rays == v.rays && nc.lineality == v.lineality;
    tr.steps.push_back(std::move(st));
  }
  tr.final_F = cur;

  const PolarFiberSystem sys(PolarQuery(tr.final_F, p));
  for (const auto& st : tr.steps) {
    VPolyhedron expected{tr.final_F.dim(), st.Ek, st.rays, st.lineality};
    tr.final_fibers_match.push_back(vertices_and_rays(sys.fiber(st.xk)) == expected.canonical());
  }
  return tr;
}

/// The constructed operator's value at z0: the polar fiber of final_F, restricted to C.
inline std::optional<VPolyhedron> evaluate_final(const ConstructionTrace& tr, const QVector& z0) {
  if (!hull_contains(tr.hull, z0)) return std::nullopt;
  VPolyhedron v = vertices_and_rays(polar_fiber(PolarQuery(tr.final_F, tr.p), z0));
  if (v.empty()) return std::nullopt;
  return v;
}

}  // namespace pcm
