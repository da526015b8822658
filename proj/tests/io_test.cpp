#include <gtest/gtest.h>

#include <regex>

#include "pcm/io/svg.hpp"
#include "support.hpp"

using namespace pcm;
using pcm::test::load;
using pcm::test::V;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(OperatorDocument, RoundTripKeepsFileOrder) {
  auto doc = load("w10");
  auto again = io::operator_from(io::parse_text(io::to_json(doc).dump()));
  EXPECT_EQ(doc, again);
  EXPECT_EQ(doc.points.front().x, V("1,0"));
  EXPECT_EQ(doc.order().size(), 6u);
  EXPECT_EQ(doc.order()[1], V("1/2,1/2"));
}

TEST(OperatorDocument, FieldDiagnostics) {
  auto msg = [](const char* text) {
    try {
      io::parse_operator(text);
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(msg(R"({"dim": 2, "points": [{"x": ["1"], "xs": ["0","0"]}]})").find("$.points[0].x"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 1, "points": [{"x": ["1/0"], "xs": ["0"]}]})").find("zero denominator"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 1, "points": [{"x": [0.5], "xs": ["0"]}]})").find("not exact"), std::string::npos);
  EXPECT_NE(msg(R"({"points": []})").find("missing field 'dim'"), std::string::npos);
  EXPECT_NE(msg(R"({"dim": 1, "points": []})").find("no points"), std::string::npos);
  EXPECT_NE(msg("{\n  \"dim\": 1,\n  \"points\": [\n}").find("line 4"), std::string::npos);
}

TEST(ResultDocument, EnvelopeRoundTripAndStableBytes) {
  io::ResultDocument d;
  d.kind = "pmono";
  d.payload = io::to_json(is_p_mono(load("negid").op(), 1));
  d.meta.p = 1;
  d.meta.input_hash = "sha256:" + io::sha256_hex("abc");
  EXPECT_EQ(d.meta.input_hash, "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto bytes = d.dump();
  EXPECT_EQ(io::ResultDocument::parse(bytes), d);
  EXPECT_EQ(io::ResultDocument::parse(bytes).dump(), bytes);
  EXPECT_LT(bytes.find("\"kind\""), bytes.find("\"meta\""));
  EXPECT_THROW(io::ResultDocument::parse(R"({"kind":"nope","payload":{},"meta":{}})"), io::ParseError);
}

TEST(ResultDocument, TypedPayloadRoundTrips) {
  const auto bw = load("bw_final").op();
  auto pm = is_p_mono(load("negid").op(), 1);
  auto pm2 = io::pmono_from(io::to_json(pm), 1);
  EXPECT_EQ(pm2.max_sum, pm.max_sum);
  EXPECT_EQ(*pm2.witness, *pm.witness);

  auto h = polar_fiber(PolarQuery(bw, 2), V("1/2,1/2"));
  EXPECT_EQ(io::hpolyhedron_from(io::to_json(h)), h);

  auto v = vertices_and_rays(h);
  EXPECT_EQ(io::vpolyhedron_from(io::to_json(v)), v);

  auto c = domain_membership(PolarQuery(bw, 2), V("0,0"));
  auto c2 = io::domain_from(io::to_json(c), 2);
  EXPECT_EQ(c2.member, c.member);
  EXPECT_EQ(c2.lambda, c.lambda);
  EXPECT_EQ(c2.anchors, c.anchors);
  EXPECT_EQ(c2.lp_value, c.lp_value);

  auto rep = falsify_pmono(load("bw_final_plus_origin").points, 2);
  auto rep2 = io::falsify_from(io::to_json(rep), 2);
  EXPECT_EQ(rep2.found, rep.found);
  EXPECT_EQ(*rep2.cycle, *rep.cycle);
  EXPECT_EQ(rep2.sum, rep.sum);

  auto tr = pcm::test::construct_in_file_order("bw_perturbed_seed", 2);
  auto j = io::to_json(tr);
  auto tr2 = io::trace_from(j);
  EXPECT_EQ(tr2.final_F, tr.final_F);
  EXPECT_EQ(tr2.steps.size(), tr.steps.size());
  EXPECT_EQ(io::to_json(tr2), j);
}

TEST(Svg, DomainFigureHasDiamondVerticesAndEdges) {
  auto tr = pcm::test::construct_in_file_order("bw_seed", 2);
  auto svg = io::render_domain(tr);
  EXPECT_EQ(count(svg, "class=\"seed-point\""), 4u);
  EXPECT_EQ(count(svg, "class=\"hull-edge\""), 4u);
  EXPECT_EQ(svg, io::render_domain(tr));
}

TEST(Svg, RangeFigureHasOneGroupPerApex) {
  auto tr = pcm::test::construct_in_file_order("three_cyclic_seed", 3);
  auto svg = io::render_range(tr, io::parse_bbox("-3,-3,3,3"));
  EXPECT_EQ(count(svg, "<g class=\"fiber\""), 5u);
  EXPECT_EQ(count(svg, "class=\"region\""), 5u);
  EXPECT_EQ(count(svg, "class=\"vertex\""), 8u);
}

TEST(Svg, RejectsNonPlanarTracesAndBadBoxes) {
  auto tr = pcm::test::construct_in_file_order("r3_seed", 2);
  EXPECT_THROW(io::render_domain(tr), InputError);
  EXPECT_THROW(io::parse_bbox("1,0,0,1"), InputError);
  EXPECT_THROW(io::parse_bbox("0,0,1"), InputError);
}

TEST(Svg, ConvexHull2d) {
  auto h = io::convex_hull_2d({V("0,0"), V("1,0"), V("1,1"), V("0,1"), V("1/2,1/2"), V("1/2,0")});
  EXPECT_EQ(h, (std::vector<QVector>{V("0,0"), V("1,0"), V("1,1"), V("0,1")}));
}
