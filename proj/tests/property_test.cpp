#include <gtest/gtest.h>

#include <algorithm>

#include "properties.hpp"

using namespace pcm;
using pcm::test::Gen;

namespace {

void expect_clean(const pcm::test::PropertyTally& t, int prop) {
  const auto& f = t.failures[static_cast<std::size_t>(prop)];
  EXPECT_GT(t.checks[static_cast<std::size_t>(prop)], 0u);
  EXPECT_TRUE(f.empty()) << f.size() << " failures, first: " << f.front();
}

const pcm::test::PropertyTally& suite() {
  static const auto t = pcm::test::run_property_suite(1001, 200);
  return t;
}

}  // namespace

TEST(Properties, FiberMatchesBruteForceOracle) { expect_clean(suite(), 0); }
TEST(Properties, PolarNestingInP) { expect_clean(suite(), 1); }
TEST(Properties, AntitonicityUnderGraphInclusion) { expect_clean(suite(), 2); }
TEST(Properties, SelfInclusionIffPMono) { expect_clean(suite(), 3); }
TEST(Properties, RecessionConeIsNormalCone) { expect_clean(suite(), 4); }
TEST(Properties, OutsideHullIsInDomain) { expect_clean(suite(), 5); }
TEST(Properties, HVRoundTripAndLpCertificates) { expect_clean(suite(), 6); }

TEST(Properties, CyclicSumIsRotationInvariant) {
  Gen g(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = static_cast<std::size_t>(g.uniform(1, 3));
    std::vector<PointPair> e;
    for (int i = 0, n = g.uniform(2, 5); i < n; ++i) e.emplace_back(g.probe(d), g.probe(d));
    const Rational s = cyclic_sum(std::span<const PointPair>(e));
    std::rotate(e.begin(), e.begin() + 1, e.end());
    EXPECT_EQ(cyclic_sum(std::span<const PointPair>(e)), s);
  }
}

TEST(Properties, PMonoIsDownwardClosedAndMaxSumNonNegative) {
  Gen g(4);
  for (int trial = 0; trial < 150; ++trial) {
    const auto d = static_cast<std::size_t>(g.uniform(1, 3));
    const auto n = static_cast<std::size_t>(g.uniform(1, 5));
    const auto F = trial % 2 ? g.op(d, n) : g.mono_op(d, n, 3);
    bool prev = true;
    for (int p = 4; p >= 1; --p) {
      auto r = is_p_mono(F, p);
      EXPECT_GE(r.max_sum, 0);
      EXPECT_EQ(r.verdict, r.max_sum == 0);
      if (p < 4) EXPECT_TRUE(!prev || r.verdict);
      prev = r.verdict;
    }
  }
}

TEST(Properties, ImageAndPreimageContainEveryPair) {
  Gen g(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto F = g.op(2, 5);
    for (const auto& pr : F.pairs()) {
      const auto im = image(F, pr.x), pre = preimage(F, pr.xs);
      EXPECT_NE(std::find(im.begin(), im.end(), pr.xs), im.end());
      EXPECT_NE(std::find(pre.begin(), pre.end(), pr.x), pre.end());
    }
  }
}

// With lineality L the reported vertices are those of H restricted to L-perp.
TEST(Properties, EveryVertexHasFullRankActiveSet) {
  Gen g(8);
  for (int trial = 0; trial < 80; ++trial) {
    const auto d = static_cast<std::size_t>(g.uniform(1, 3));
    std::vector<LinearInequality> rows;
    for (int i = 0, m = g.uniform(1, 8); i < m; ++i) rows.push_back({g.point(d), Rational(g.uniform(-3, 3)), Relation::ge});
    HPolyhedron h(d, rows);
    const auto v = vertices_and_rays(h);
    for (const auto& x : v.vertices) {
      std::vector<QVector> active = v.lineality;
      for (const auto& r : h.rows())
        if (dot(r.a, x) == r.b) active.push_back(r.a);
      EXPECT_EQ(linalg::rank(linalg::to_matrix(active), d), d);
    }
  }
}

TEST(Properties, ConstructionInvariantsOnRandomMonotoneSeeds) {
  Gen g(10);
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = static_cast<std::size_t>(g.uniform(2, 3));
    const int p = g.uniform(1, 3);
    const auto seed = g.mono_op(d, static_cast<std::size_t>(g.uniform(d + 1, 5)), p);
    ConstructionTrace tr;
    try {
      tr = construct(seed, p);
    } catch (const ConstructionError&) {
      continue;  // affinely degenerate seed
    }
    ++built;
    EXPECT_TRUE(tr.all_checks_pass());
    EXPECT_TRUE(is_p_mono(tr.final_F, p).verdict);
    for (const auto& s : tr.steps) {
      auto at = evaluate_final(tr, s.xk);
      ASSERT_TRUE(at);
      auto expected = VPolyhedron{d, s.Ek, s.rays, s.lineality}.canonical();
      EXPECT_EQ(*at, expected);
    }
  }
  EXPECT_GT(built, 20);
}

TEST(Properties, DeterministicWitnessSelection) {
  Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto F = g.op(2, 4);
    auto a = is_p_mono(F, 2), b = is_p_mono(FiniteOperator(F.dim(), F.pairs()), 2);
    EXPECT_EQ(a.max_sum, b.max_sum);
    EXPECT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness) EXPECT_EQ(*a.witness, *b.witness);
  }
}

TEST(Properties, ReducePreservesTheSetAndIsCanonical) {
  Gen g(14);
  for (int trial = 0; trial < 120; ++trial) {
    const auto d = static_cast<std::size_t>(g.uniform(1, 3));
    std::vector<LinearInequality> rows;
    for (int i = 0, m = g.uniform(1, 8); i < m; ++i)
      rows.push_back({g.point(d), Rational(g.uniform(-3, 3)), i % 4 == 3 ? Relation::eq : Relation::ge});
    HPolyhedron h(d, rows);
    const auto r = reduce(h);
    for (int k = 0; k < 20; ++k) {
      const auto z = g.probe(d);
      EXPECT_EQ(h_contains(r, z), h_contains(h, z));
    }
    for (const auto& x : vertices_and_rays(h).vertices) EXPECT_TRUE(h_contains(r, x));
    std::reverse(rows.begin(), rows.end());
    rows.push_back(rows.front());
    EXPECT_EQ(reduce(HPolyhedron(d, rows)), r);
    EXPECT_EQ(reduce(r), r);
  }
}
