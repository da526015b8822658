// pcm: command-line front end for the exact p-cyclic monotonicity toolkit.
//
// Exit codes: 0 success (or "monotone"), 1 negative verdict / violation found /
// construction aborted, 2 usage, parse or dimension errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "pcm/io/json.hpp"
#include "pcm/io/svg.hpp"
#include "pcm/pcm.hpp"

namespace {

using namespace pcm;
using io::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError(path + ": cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(path + ": cannot write");
    out << bytes;
    out.flush();
    if (!out) throw Error(path + ": write failed");
  }
  fs::rename(tmp, target);
}

struct Common {
  std::string input;
  std::string out;
  int p = 2;
};

void emit(const Common& c, const std::string& bytes) {
  if (c.out.empty() || c.out == "-") {
    std::cout << bytes;
  } else {
    write_atomic(c.out, bytes);
  }
}

io::ResultDocument envelope(const std::string& kind, json payload, int p, const std::string& input_bytes) {
  io::ResultDocument d;
  d.kind = kind;
  d.payload = std::move(payload);
  d.meta.p = p;
  d.meta.input_hash = "sha256:" + io::sha256_hex(input_bytes);
  return d;
}

QVector point_arg(const std::string& text, const char* flag, std::size_t dim) {
  if (text.empty()) throw InputError(std::string(flag) + " is required");
  QVector v = parse_qvector(text);
  if (v.dim() != dim)
    throw InputError(std::string(flag) + " has dimension " + std::to_string(v.dim()) + ", operator has " +
                     std::to_string(dim));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and verification of p-cyclically monotone operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));

  Common c;
  std::string z0, z1, zps, bbox, what = "domain", order = "input";
  std::uint64_t seed = 0, budget = kDefaultFalsifyBudget;
  int grid = 0;

  auto add_common = [&](CLI::App* s) {
    s->add_option("input", c.input, "input JSON document")->required();
    s->add_option("--p", c.p, "cyclicity order p >= 1")->capture_default_str();
    s->add_option("--out", c.out, "output path (default stdout)");
  };

  auto* check = app.add_subcommand("check", "is the operator p-cyclically monotone?");
  add_common(check);
  auto* construct_cmd = app.add_subcommand("construct", "run the construction from a seed");
  add_common(construct_cmd);
  construct_cmd->add_option("--order", order, "processing order: input (file order) or lex")
      ->check(CLI::IsMember({"input", "lex"}))
      ->capture_default_str();
  auto* fiber = app.add_subcommand("fiber", "H-representation of the polar fiber at z0");
  add_common(fiber);
  fiber->add_option("--z0", z0, "point, e.g. 1/2,0")->required();
  auto* vertices = app.add_subcommand("vertices", "V-representation of the polar fiber at z0");
  add_common(vertices);
  vertices->add_option("--z0", z0)->required();
  auto* domain = app.add_subcommand("domain", "is z0 in the domain of the polar?");
  add_common(domain);
  domain->add_option("--z0", z0)->required();
  auto* ntilde = app.add_subcommand("ntilde", "N~(z1, zp*)");
  add_common(ntilde);
  ntilde->add_option("--z1", z1)->required();
  ntilde->add_option("--zps", zps)->required();
  auto* mtilde = app.add_subcommand("mtilde", "M~(z0, z1)");
  add_common(mtilde);
  mtilde->add_option("--z0", z0)->required();
  mtilde->add_option("--z1", z1)->required();
  auto* chain = app.add_subcommand("chain-check", "perpendicular chain certificate (nodes in file order)");
  add_common(chain);
  auto* falsify = app.add_subcommand("falsify", "search for a violating cycle (refutes only)");
  add_common(falsify);
  falsify->add_option("--seed", seed)->capture_default_str();
  falsify->add_option("--budget", budget)->capture_default_str();
  falsify->add_option("--grid", grid, "also sample the chain segments with this denominator");
  auto* render = app.add_subcommand("render", "SVG of a planar construction trace");
  render->add_option("input", c.input, "trace document (from construct)")->required();
  render->add_option("--what", what)->check(CLI::IsMember({"domain", "range"}))->capture_default_str();
  render->add_option("--bbox", bbox, "xmin,ymin,xmax,ymax");
  render->add_option("--out", c.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const std::string bytes = read_file(c.input);

    if (render->parsed()) {
      const auto doc = io::ResultDocument::parse(bytes);
      if (doc.kind != "trace") throw InputError("render expects a trace document, got kind '" + doc.kind + "'");
      const auto trace = io::trace_from(doc.payload, "$.payload");
      std::optional<io::BBox> box;
      if (!bbox.empty()) box = io::parse_bbox(bbox);
      emit(c, what == "domain" ? io::render_domain(trace, box) : io::render_range(trace, box));
      return kOk;
    }

    const auto doc = io::parse_operator(bytes, c.input);
    const FiniteOperator F = doc.op();
    const std::size_t d = F.dim();

    if (check->parsed()) {
      auto r = is_p_mono(F, c.p);
      emit(c, envelope("pmono", io::to_json(r), c.p, bytes).dump());
      return r.verdict ? kOk : kNegative;
    }

    if (construct_cmd->parsed()) {
      auto mono = is_p_mono(F, c.p);
      if (!mono.verdict) {
        std::cerr << "pcm: seed is not " << c.p << "-cyclically monotone (max cyclic sum " << mono.max_sum << ")\n";
        std::cout << envelope("pmono", io::to_json(mono), c.p, bytes).dump();
        return kNegative;
      }
      ConstructOptions opt;
      if (order == "input") opt.order = doc.order();
      ConstructionTrace tr;
      try {
        tr = pcm::construct(F, c.p, opt);
      } catch (const ConstructionError& e) {
        std::cerr << "pcm: construction aborted: " << e.what() << "\n";
        return kNegative;
      }
      emit(c, envelope("trace", io::to_json(tr), c.p, bytes).dump());
      if (!tr.all_checks_pass()) {
        std::cerr << "pcm: warning: an embedded construction check failed\n";
        return kNegative;
      }
      return kOk;
    }

    if (fiber->parsed() || vertices->parsed()) {
      const QVector z = point_arg(z0, "--z0", d);
      const HPolyhedron h = polar_fiber(PolarQuery(F, c.p), z);
      if (fiber->parsed()) {
        json payload{{"z0", io::to_json(z)}, {"fiber", io::to_json(h)}, {"feasible", is_feasible(h)}};
        emit(c, envelope("fiber", payload, c.p, bytes).dump());
      } else {
        json payload{{"z0", io::to_json(z)}, {"vrep", io::to_json(vertices_and_rays(h))}};
        emit(c, envelope("vrep", payload, c.p, bytes).dump());
      }
      return kOk;
    }

    if (domain->parsed()) {
      const QVector z = point_arg(z0, "--z0", d);
      auto cert = domain_membership(PolarQuery(F, c.p), z);
      json payload = io::to_json(cert);
      payload["z0"] = io::to_json(z);
      emit(c, envelope("domain", payload, c.p, bytes).dump());
      return kOk;
    }

    if (ntilde->parsed()) {
      const QVector a = point_arg(z1, "--z1", d), b = point_arg(zps, "--zps", d);
      json payload{{"z1", io::to_json(a)}, {"zps", io::to_json(b)}, {"value", n_tilde(PolarQuery(F, c.p), a, b).str()}};
      emit(c, envelope("ntilde", payload, c.p, bytes).dump());
      return kOk;
    }

    if (mtilde->parsed()) {
      const QVector a = point_arg(z0, "--z0", d), b = point_arg(z1, "--z1", d);
      json payload{{"z0", io::to_json(a)}, {"z1", io::to_json(b)}, {"value", m_tilde(PolarQuery(F, c.p), a, b).str()}};
      emit(c, envelope("mtilde", payload, c.p, bytes).dump());
      return kOk;
    }

    if (chain->parsed()) {
      ChainOperator ch{doc.points, std::nullopt};
      const auto perp = perpendicularity_check(ch);
      json payload{{"perpendicularity", io::to_json(perp)}};
      int rc = kOk;
      try {
        auto v = chain_pmono(ch, c.p);
        payload["verdict"] = v.verdict;
        payload["max_sum"] = v.max_sum.str();
        payload["hypothesis_index"] = nullptr;
        rc = v.verdict ? kOk : kNegative;
      } catch (const HypothesisError& e) {
        std::cerr << "pcm: " << e.what() << "\n";
        payload["verdict"] = nullptr;
        payload["max_sum"] = nullptr;
        payload["hypothesis_index"] = e.index();
        rc = kNegative;
      }
      emit(c, envelope("chain", payload, c.p, bytes).dump());
      return rc;
    }

    if (falsify->parsed()) {
      std::vector<PointPair> sample = doc.points;
      if (grid > 0) {
        auto extra = sample_chain(ChainOperator{doc.points, std::nullopt}, grid);
        sample.insert(sample.end(), extra.begin(), extra.end());
      }
      std::sort(sample.begin(), sample.end());
      sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
      auto rep = falsify_pmono(sample, c.p, budget, seed);
      json payload = io::to_json(rep);
      payload["seed"] = seed;
      payload["budget"] = budget;
      emit(c, envelope("falsify", payload, c.p, bytes).dump());
      if (!rep.found) {
        std::cerr << "no violation found (not a proof)\n";
        return kOk;
      }
      return kNegative;
    }
  } catch (const ConstructionError& e) {
    std::cerr << "pcm: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    std::cerr << "pcm: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pcm: internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
