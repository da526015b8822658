#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcm;
using pcm::test::load;
using pcm::test::op;
using pcm::test::V;
using pcm::test::vset;

TEST(Perpendicularity, ChainsFromTheExamples) {
  auto r3 = ChainOperator{load("r3_final").points, std::nullopt};
  auto perp = perpendicularity_check(r3);
  ASSERT_EQ(perp.size(), 4u);
  // y1 = (1,0,0) -> (-4,0,12), y2 = (0,1,0) -> (-5,-1,11): <(1,-1,0),(1,1,1)> = 0.
  EXPECT_EQ(perp[0], 0);
  for (const auto& v : perpendicularity_check(ChainOperator{load("w10").points, std::nullopt})) EXPECT_EQ(v, 0);
  EXPECT_EQ(perpendicularity_check(ChainOperator{{PointPair(V("1"), V("2"))}, std::nullopt}),
            std::vector<Rational>{Rational(0)});
}

TEST(ChainPMono, CertifiesExampleChains) {
  EXPECT_TRUE(chain_pmono(ChainOperator{load("r3_final").points, std::nullopt}, 2).verdict);
  EXPECT_TRUE(chain_pmono(ChainOperator{load("three_cyclic_final").points, std::nullopt}, 3).verdict);
  EXPECT_TRUE(chain_pmono(ChainOperator{load("w10").points, std::nullopt}, 2).verdict);
}

TEST(ChainPMono, NonPerpendicularPairNamesIndex) {
  ChainOperator ch{load("not_perpendicular").points, std::nullopt};
  try {
    chain_pmono(ch, 1);
    FAIL() << "expected a hypothesis error";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(ChainPMono, EqualsNodeSetVerdict) {
  ChainOperator ch{load("w10").points, std::nullopt};
  for (int p = 1; p <= 3; ++p) {
    auto a = chain_pmono(ch, p);
    auto b = is_p_mono(ch.node_set(), p);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.max_sum, b.max_sum);
  }
}

// Probes polar membership against a discretised segment union: when the
// perpendicularity hypothesis holds it must agree with the node-set polar.
TEST(ChainPolar, DiscretisedSegmentsAgreeWithNodes) {
  ChainOperator ch{load("w10").points, std::nullopt};
  const auto dense = sample_chain(ch, 4);
  PolarQuery nodes(ch.node_set(), 2), segs(FiniteOperator(dense), 2);
  pcm::test::Gen g(31);
  int disagreements = 0;
  for (int k = 0; k < 150; ++k) {
    const auto z0 = g.probe(2), z0s = g.probe(2);
    disagreements += polar_contains(nodes, z0, z0s).verdict != polar_contains(segs, z0, z0s).verdict;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Falsify, FindsViolationWhenOriginIsAdded) {
  const auto sample = load("bw_final_plus_origin").points;
  auto rep = falsify_pmono(sample, 2);
  ASSERT_TRUE(rep.found);
  EXPECT_TRUE(verify_falsification(rep, sample));
  EXPECT_GT(*rep.sum, 0);
}

TEST(Falsify, NothingFoundOnCertifiedChains) {
  ChainOperator ch{load("w10").points, std::nullopt};
  ASSERT_TRUE(chain_pmono(ch, 2).verdict);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto rep = falsify_pmono(sample_chain(ch, 8), 2, 5000, seed);
    EXPECT_FALSE(rep.found);
    EXPECT_EQ(rep.samples_used, 5000u);
  }
  EXPECT_FALSE(falsify_pmono(load("bw_final").points, 2).found);
  EXPECT_FALSE(falsify_pmono({}, 2).found);
}

TEST(Falsify, RandomModeIsDeterministicAndSound) {
  pcm::test::Gen g(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto F = g.op(2, 5);
    const auto sample = F.pairs();
    auto a = falsify_pmono(sample, 2, 30, 7);
    auto b = falsify_pmono(sample, 2, 30, 7);
    EXPECT_EQ(a.found, b.found);
    EXPECT_TRUE(verify_falsification(a, sample));
    if (a.found) {
      EXPECT_EQ(*a.cycle, *b.cycle);
      EXPECT_FALSE(is_p_mono(F, 2).verdict);
    }
  }
  EXPECT_THROW(falsify_pmono({}, 2, 0), InputError);
}

TEST(FiberCompare, ExpectedAndPerturbedSets) {
  PolarQuery bw(load("bw_final").op(), 2);
  EXPECT_TRUE(fiber_compare(bw, V("0,1"), vset(2, {V("-1,0")}, {V("1,1"), V("-1,1")})));
  EXPECT_FALSE(fiber_compare(bw, V("0,1"), vset(2, {V("-1,1/8")}, {V("1,1"), V("-1,1")})));
  PolarQuery pert(load("bw_perturbed_final").op(), 2);
  EXPECT_TRUE(fiber_compare(pert, V("0,0"), vset(2, {V("-1,-1/2")})));
  EXPECT_FALSE(fiber_compare(pert, V("0,0"), vset(2, {V("-1,-1/3")})));
}

TEST(Sampling, GridAndNormalConeSamples) {
  auto seg = segment_grid(PointPair(V("0,0"), V("0,0")), PointPair(V("1,0"), V("0,2")), 4);
  ASSERT_EQ(seg.size(), 5u);
  EXPECT_EQ(seg[1], PointPair(V("1/4,0"), V("0,1/2")));
  ChainOperator ch{load("bw_final").points, PolytopeHull(load("bw_seed").op().domain())};
  const auto s = sample_chain(ch, 2);
  EXPECT_TRUE(std::find(s.begin(), s.end(), PointPair(V("1,0"), V("1/2,3/2"))) != s.end());
  EXPECT_THROW(segment_grid(seg[0], seg[1], 0), InputError);
}
