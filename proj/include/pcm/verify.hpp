#pragma once

// Perpendicular-chain certificates, fiber regression checks and a random
// refuter for p-cyclic monotonicity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/operator.hpp"
#include "pcm/polar.hpp"
#include "pcm/polyhedra.hpp"

namespace pcm {

/// Union of the segments [w_i, w_{i+1}] (cyclically) in the graph space,
/// optionally enlarged by the normal cone of a hull.
struct ChainOperator {
  std::vector<PointPair> nodes;
  std::optional<PolytopeHull> hull;

  FiniteOperator node_set() const {
    if (nodes.empty()) throw InputError("chain has no nodes");
    return FiniteOperator(nodes);
  }
};

/// <w_i - w_{i+1}, w_i* - w_{i+1}*> for i = 1..n, wrapping around.
inline std::vector<Rational> perpendicularity_check(const ChainOperator& chain) {
  std::vector<Rational> out;
  const std::size_t n = chain.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = chain.nodes[i];
    const auto& b = chain.nodes[(i + 1) % n];
    out.push_back(dot(a.x - b.x, a.xs - b.xs));
  }
  return out;
}

struct ChainVerdict {
  bool verdict = false;
  Rational max_sum;
};

/// Under perpendicularity, the segment union is p-cyclically monotone iff its nodes are.
inline ChainVerdict chain_pmono(const ChainOperator& chain, int p) {
  const auto perp = perpendicularity_check(chain);
  for (std::size_t i = 0; i < perp.size(); ++i)
    if (perp[i] != 0)
      throw HypothesisError("nodes " + std::to_string(i) + " and " + std::to_string((i + 1) % perp.size()) +
                                " are not perpendicular (inner product " + to_string(perp[i]) + ")",
                            i);
  auto r = is_p_mono(chain.node_set(), p);
  return {r.verdict, r.max_sum};
}

/// Canonical V-rep of the polar fiber at z0 compared with an expected V-set.
inline bool fiber_compare(const PolarQuery& q, const QVector& z0, const VPolyhedron& expected) {
  return vertices_and_rays(polar_fiber(q, z0)) == expected.canonical();
}

// ---- sampling ------------------------------------------------------------

inline constexpr int kDefaultGridDenominator = 8;

/// Points (1 - k/den) a + (k/den) b for k = 0..den.
inline std::vector<PointPair> segment_grid(const PointPair& a, const PointPair& b, int den = kDefaultGridDenominator) {
  if (den < 1) throw InputError("grid denominator must be positive");
  std::vector<PointPair> out;
  for (int k = 0; k <= den; ++k) {
    const Rational t(k, den);
    const Rational s = 1 - t;
    out.emplace_back(s * a.x + t * b.x, s * a.xs + t * b.xs);
  }
  return out;
}

/// Grid samples on every chain segment, plus node + (k/den) * ray for the hull's
/// normal-cone rays at each node inside the hull (k = 1..den).
inline std::vector<PointPair> sample_chain(const ChainOperator& chain, int den = kDefaultGridDenominator) {
  std::vector<PointPair> out;
  const std::size_t n = chain.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto seg = segment_grid(chain.nodes[i], chain.nodes[(i + 1) % n], den);
    out.insert(out.end(), seg.begin(), seg.end());
  }
  if (chain.hull) {
    for (const auto& w : chain.nodes) {
      if (!hull_contains(*chain.hull, w.x)) continue;
      const auto nc = vertices_and_rays(normal_cone_at(*chain.hull, w.x));
      for (const auto& r : nc.rays)
        for (int k = 1; k <= den; ++k) out.emplace_back(w.x, w.xs + Rational(k, den) * r);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- refuter -------------------------------------------------------------

inline constexpr std::uint64_t kDefaultFalsifyBudget = 20000;

struct FalsificationReport {
  bool found = false;
  std::optional<Cycle> cycle;
  std::optional<Rational> sum;
  std::uint64_t samples_used = 0;
};

/// Looks for a (p+1)-cycle with positive sum among the sample points: first all
/// cycles when there are at most `budget` of them, then `budget` random cycles
/// drawn with a seeded generator. A report with found = true is a genuine
/// violation; found = false proves nothing.
inline FalsificationReport falsify_pmono(const std::vector<PointPair>& sample, int p,
                                         std::uint64_t budget = kDefaultFalsifyBudget, std::uint64_t seed = 0) {
  check_cyclicity(p);
  if (budget < 1) throw InputError("falsification budget must be at least 1");
  FalsificationReport rep;
  if (sample.empty()) return rep;
  const std::size_t n = sample.size();
  const std::size_t len = static_cast<std::size_t>(p) + 1;
  const auto gram = detail::pair_gram(sample);
  auto sum_of = [&](std::span<const std::size_t> ix) {
    Rational s = 0;
    for (std::size_t k = 0; k < len; ++k) {
      s += gram[ix[k]][ix[(k + 1) % len]];
      s -= gram[ix[k]][ix[k]];
    }
    return s;
  };
  auto report = [&](std::span<const std::size_t> ix, Rational s) {
    std::vector<PointPair> entries;
    for (auto i : ix) entries.push_back(sample[i]);
    rep.found = true;
    rep.cycle = Cycle(std::move(entries));
    rep.sum = std::move(s);
  };

  // Exhaustive pass when the tuple count fits in the budget.
  long double total = 1;
  for (std::size_t k = 0; k < len; ++k) total *= static_cast<long double>(n);
  if (total <= static_cast<long double>(budget)) {
    for (TupleEnumerator it(n, len); !it.done(); it.advance()) {
      ++rep.samples_used;
      Rational s = sum_of(it.indices());
      if (s > 0) {
        report(it.indices(), std::move(s));
        return rep;
      }
    }
    return rep;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> ix(len);
  for (std::uint64_t b = 0; b < budget; ++b) {
    for (auto& i : ix) i = pick(rng);
    ++rep.samples_used;
    Rational s = sum_of(ix);
    if (s > 0) {
      report(ix, std::move(s));
      return rep;
    }
  }
  return rep;
}

/// A positive report must carry a cycle of sample points with the stated positive sum.
inline bool verify_falsification(const FalsificationReport& rep, const std::vector<PointPair>& sample) {
  if (!rep.found) return !rep.cycle && !rep.sum;
  if (!rep.cycle || !rep.sum || *rep.sum <= 0) return false;
  if (cyclic_sum(*rep.cycle) != *rep.sum) return false;
  return std::all_of(rep.cycle->entries().begin(), rep.cycle->entries().end(), [&](const PointPair& e) {
    return std::find(sample.begin(), sample.end(), e) != sample.end();
  });
}

}  // namespace pcm
