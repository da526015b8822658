#include <gtest/gtest.h>

#include <cstdlib>

#include "support.hpp"

using namespace pcm;
using pcm::test::op;
using pcm::test::V;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-.5"), Rational(-1, 2));
  EXPECT_EQ(to_string(parse_rational("4/8")), "1/2");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.2.3", "1e3", "--1", "0x10"})
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(QVector, ArithmeticAndOrder) {
  QVector a = V("1,2"), b = V("1/2,-1");
  EXPECT_EQ(a + b, V("3/2,1"));
  EXPECT_EQ(a - b, V("1/2,3"));
  EXPECT_EQ(dot(a, b), Rational(-3, 2));
  EXPECT_LT(b, a);
  EXPECT_THROW(dot(a, V("1")), InputError);
  EXPECT_EQ(to_string(V("1/2,-1")), "(1/2,-1)");
}

TEST(FiniteOperator, SortsDedupesAndChecksDimensions) {
  auto F = op({{"1,0", "0,1"}, {"0,1", "-1,0"}, {"1,0", "0,1"}});
  EXPECT_EQ(F.size(), 2u);
  EXPECT_EQ(F.domain(), (std::vector<QVector>{V("0,1"), V("1,0")}));
  EXPECT_EQ(image(F, V("1,0")), std::vector<QVector>{V("0,1")});
  EXPECT_EQ(preimage(F, V("-1,0")), std::vector<QVector>{V("0,1")});
  EXPECT_THROW(op({{"1,0", "0,1"}, {"1", "1"}}), InputError);
  EXPECT_THROW(PointPair(V("1,0"), V("1")), InputError);
}

TEST(CyclicSum, MatchesHandComputation) {
  // <x2 - x1, x1*> + <x1 - x2, x2*> for the 1-D negative identity.
  Cycle c({PointPair(V("1"), V("-1")), PointPair(V("-1"), V("1"))});
  EXPECT_EQ(cyclic_sum(c), Rational(4));
  EXPECT_EQ(c.p(), 1u);
}

TEST(TupleEnumerator, LastIndexRunsFastest) {
  std::vector<std::vector<std::size_t>> seen;
  for (TupleEnumerator it(2, 3); !it.done(); it.advance()) seen.emplace_back(it.indices().begin(), it.indices().end());
  ASSERT_EQ(seen.size(), 8u);
  EXPECT_EQ(seen[1], (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(seen.back(), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(EnumerateTuples, StopsWhenCallbackReturnsFalse) {
  auto F = op({{"0", "0"}, {"1", "1"}, {"2", "2"}});
  int calls = 0;
  enumerate_tuples(std::span(F.pairs()), 2, [&](auto) { return ++calls < 4; });
  EXPECT_EQ(calls, 4);
}

TEST(IsPMono, NegativeIdentityIsNotMonotone) {
  auto r = is_p_mono(op({{"1", "-1"}, {"-1", "1"}}), 1);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.max_sum, Rational(4));
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(cyclic_sum(*r.witness), Rational(4));
}

TEST(IsPMono, ChainW10IsTwoCyclicallyMonotoneWithMaxZero) {
  auto r = is_p_mono(pcm::test::load("w10").op(), 2);
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.max_sum, Rational(0));
  EXPECT_FALSE(r.witness);
}

TEST(IsPMono, WitnessIsFirstMaximiserInStreamOrder) {
  auto F = op({{"0", "1"}, {"1", "0"}});
  auto r = is_p_mono(F, 1);
  ASSERT_TRUE(r.witness);
  // Tuples (0,1) and (1,0) both reach the maximum; (0,1) comes first.
  EXPECT_EQ((*r.witness)[0], F.pairs()[0]);
}

TEST(IsPMono, EnumerationCapAndEnvOverride) {
  auto F = op({{"0", "0"}});
  EXPECT_THROW(is_p_mono(F, 5), LimitError);
  EXPECT_THROW(is_p_mono(F, 0), InputError);
  ::setenv("PCM_MAX_P", "6", 1);
  EXPECT_NO_THROW(is_p_mono(F, 5));
  ::unsetenv("PCM_MAX_P");
  EXPECT_THROW(is_p_mono(FiniteOperator(), 1), InputError);
}

TEST(IsPMono, AgreesWithDirectCyclicSums) {
  pcm::test::Gen g(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto dim = static_cast<std::size_t>(g.uniform(1, 3));
    const auto F = g.op(dim, static_cast<std::size_t>(g.uniform(1, 4)));
    const int p = g.uniform(1, 3);
    Rational best;
    bool first = true;
    enumerate_tuples(std::span(F.pairs()), static_cast<std::size_t>(p) + 1, [&](auto t) {
      std::vector<PointPair> e;
      for (auto* pp : t) e.push_back(*pp);
      Rational s = cyclic_sum(std::span<const PointPair>(e));
      if (first || s > best) best = s;
      first = false;
    });
    auto r = is_p_mono(F, p);
    EXPECT_EQ(r.max_sum, best);
    EXPECT_EQ(r.verdict, best <= 0);
  }
}

TEST(IsPMono, MatchesFrozenOracleMaxima) {
  auto frozen = io::parse_text(pcm::test::slurp(PCM_ORACLE_FILE));
  int n = 0;
  for (const auto& c : frozen["cases"]) {
    const auto F = io::operator_from(c).op();
    EXPECT_EQ(is_p_mono(F, c["p"].get<int>()).max_sum, io::rational_from(c["max_cyclic_sum"], "max"));
    ++n;
  }
  EXPECT_GE(n, 100);
}

TEST(Linalg, RrefNullspaceAndPrimitive) {
  linalg::Matrix a{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}};
  EXPECT_EQ(linalg::rank(a, 3), 1u);
  auto ns = linalg::nullspace(a, 3);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(dot(V("1,2,3"), v), 0);
  EXPECT_EQ(linalg::primitive(V("1/2,-3/4,0")), V("2,-3,0"));
  EXPECT_EQ(linalg::primitive(V("0,0")), V("0,0"));
  auto x = linalg::solve_unique({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}}, {Rational(3), Rational(1)}, 2);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, V("2,1"));
  EXPECT_FALSE(linalg::solve_unique({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}, {Rational(0), Rational(1)}, 2));
}
