#pragma once

// JSON documents: operators in, results out. Rationals always travel as strings.

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcm/construct.hpp"
#include "pcm/errors.hpp"
#include "pcm/hpolyhedron.hpp"
#include "pcm/operator.hpp"
#include "pcm/polar.hpp"
#include "pcm/polyhedra.hpp"
#include "pcm/verify.hpp"

namespace pcm::io {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Input document error with the JSON path (and line, for syntax errors).
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// ---- scalars and vectors ---------------------------------------------------

inline json to_json(const Rational& q) { return q.str(); }

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(c.str());
  return a;
}

inline json to_json(const std::vector<QVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json to_json(const std::vector<Rational>& qs) {
  json a = json::array();
  for (const auto& q : qs) a.push_back(q.str());
  return a;
}

inline Rational rational_from(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_float()) throw ParseError(path + ": floating-point numbers are not exact; write a rational string");
  throw ParseError(path + ": expected a rational string");
}

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

inline QVector qvector_from(const json& j, const std::string& path, std::optional<std::size_t> dim = std::nullopt) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rationals");
  std::vector<Rational> cs;
  for (std::size_t i = 0; i < j.size(); ++i) cs.push_back(rational_from(j[i], path + "[" + std::to_string(i) + "]"));
  if (dim && cs.size() != *dim)
    throw ParseError(path + ": has " + std::to_string(cs.size()) + " coordinates, expected " + std::to_string(*dim));
  return QVector(std::move(cs));
}

inline std::vector<QVector> qvectors_from(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<QVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(qvector_from(j[i], path + "[" + std::to_string(i) + "]", dim));
  return out;
}

inline std::vector<Rational> rationals_from(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// ---- operators -------------------------------------------------------------

/// An operator as written in a file: pairs keep their file order, which is the
/// processing order used by `construct` and the node order of a chain.
struct OperatorDocument {
  std::size_t dim = 0;
  std::vector<PointPair> points;

  FiniteOperator op() const { return FiniteOperator(dim, points); }
  std::vector<QVector> order() const {
    std::vector<QVector> out;
    for (const auto& pp : points)
      if (std::find(out.begin(), out.end(), pp.x) == out.end()) out.push_back(pp.x);
    return out;
  }
  friend bool operator==(const OperatorDocument&, const OperatorDocument&) = default;
};

inline json to_json(const PointPair& pp) { return json{{"x", to_json(pp.x)}, {"xs", to_json(pp.xs)}}; }

inline json to_json(const std::vector<PointPair>& ps) {
  json a = json::array();
  for (const auto& pp : ps) a.push_back(to_json(pp));
  return a;
}

inline json to_json(const OperatorDocument& d) { return json{{"dim", d.dim}, {"points", to_json(d.points)}}; }

inline json to_json(const FiniteOperator& F) { return to_json(OperatorDocument{F.dim(), F.pairs()}); }

inline PointPair pair_from(const json& j, const std::string& path, std::size_t dim) {
  return PointPair(qvector_from(field(j, "x", path), path + ".x", dim),
                   qvector_from(field(j, "xs", path), path + ".xs", dim));
}

inline std::vector<PointPair> pairs_from(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of {x, xs} objects");
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(pair_from(j[i], path + "[" + std::to_string(i) + "]", dim));
  return out;
}

inline std::size_t dim_from(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) throw ParseError(path + ": expected a positive integer");
  return j.get<std::size_t>();
}

inline OperatorDocument operator_from(const json& j, const std::string& path = "$") {
  OperatorDocument d;
  d.dim = dim_from(field(j, "dim", path), path + ".dim");
  d.points = pairs_from(field(j, "points", path), path + ".points", d.dim);
  if (d.points.empty()) throw ParseError(path + ".points: operator has no points");
  return d;
}

/// Parses text, turning syntax errors into "line L, column C" diagnostics.
inline json parse_text(std::string_view text, const std::string& source = "input") {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

inline OperatorDocument parse_operator(std::string_view text, const std::string& source = "input") {
  return operator_from(parse_text(text, source));
}

// ---- polyhedra -------------------------------------------------------------

inline json to_json(const LinearInequality& r) {
  return json{{"a", to_json(r.a)}, {"b", r.b.str()}, {"rel", to_string(r.rel)}};
}

inline json to_json(const HPolyhedron& h) {
  json rows = json::array();
  for (const auto& r : h.rows()) rows.push_back(to_json(r));
  return json{{"dim", h.dim()}, {"rows", rows}};
}

inline HPolyhedron hpolyhedron_from(const json& j, const std::string& path = "$") {
  const std::size_t d = dim_from(field(j, "dim", path), path + ".dim");
  const json& rows = field(j, "rows", path);
  if (!rows.is_array()) throw ParseError(path + ".rows: expected an array");
  std::vector<LinearInequality> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = path + ".rows[" + std::to_string(i) + "]";
    LinearInequality r;
    r.a = qvector_from(field(rows[i], "a", p), p + ".a", d);
    r.b = rational_from(field(rows[i], "b", p), p + ".b");
    const json& rel = field(rows[i], "rel", p);
    if (rel == ">=") r.rel = Relation::ge;
    else if (rel == "=") r.rel = Relation::eq;
    else throw ParseError(p + ".rel: expected \">=\" or \"=\"");
    out.push_back(std::move(r));
  }
  return HPolyhedron(d, std::move(out));
}

inline json to_json(const VPolyhedron& v) {
  return json{{"dim", v.dim}, {"vertices", to_json(v.vertices)}, {"rays", to_json(v.rays)},
              {"lineality", to_json(v.lineality)}};
}

inline VPolyhedron vpolyhedron_from(const json& j, const std::string& path = "$") {
  VPolyhedron v;
  v.dim = dim_from(field(j, "dim", path), path + ".dim");
  v.vertices = qvectors_from(field(j, "vertices", path), path + ".vertices", v.dim);
  v.rays = qvectors_from(field(j, "rays", path), path + ".rays", v.dim);
  v.lineality = qvectors_from(field(j, "lineality", path), path + ".lineality", v.dim);
  return v;
}

// ---- results ---------------------------------------------------------------

inline json to_json(const PMonoResult& r) {
  return json{{"verdict", r.verdict},
              {"max_sum", r.max_sum.str()},
              {"witness", r.witness ? to_json(r.witness->entries()) : json(nullptr)}};
}

inline PMonoResult pmono_from(const json& j, std::size_t dim, const std::string& path = "$") {
  PMonoResult r;
  r.verdict = field(j, "verdict", path).get<bool>();
  r.max_sum = rational_from(field(j, "max_sum", path), path + ".max_sum");
  const json& w = field(j, "witness", path);
  if (!w.is_null()) r.witness = Cycle(pairs_from(w, path + ".witness", dim));
  return r;
}

inline json to_json(const DomainCertificate& c) {
  return json{{"member", c.member},
              {"inside_hull", c.inside_hull},
              {"lp_value", c.lp_value.str()},
              {"lambda", c.lambda ? to_json(*c.lambda) : json(nullptr)},
              {"anchors", to_json(c.anchors)},
              {"rhs", to_json(c.rhs)}};
}

inline DomainCertificate domain_from(const json& j, std::size_t dim, const std::string& path = "$") {
  DomainCertificate c;
  c.member = field(j, "member", path).get<bool>();
  c.inside_hull = field(j, "inside_hull", path).get<bool>();
  c.lp_value = rational_from(field(j, "lp_value", path), path + ".lp_value");
  const json& l = field(j, "lambda", path);
  if (!l.is_null()) c.lambda = rationals_from(l, path + ".lambda");
  c.anchors = qvectors_from(field(j, "anchors", path), path + ".anchors", dim);
  c.rhs = rationals_from(field(j, "rhs", path), path + ".rhs");
  return c;
}

inline json to_json(const FalsificationReport& r) {
  return json{{"found", r.found},
              {"cycle", r.cycle ? to_json(r.cycle->entries()) : json(nullptr)},
              {"sum", r.sum ? json(r.sum->str()) : json(nullptr)},
              {"samples_used", r.samples_used}};
}

inline FalsificationReport falsify_from(const json& j, std::size_t dim, const std::string& path = "$") {
  FalsificationReport r;
  r.found = field(j, "found", path).get<bool>();
  const json& c = field(j, "cycle", path);
  if (!c.is_null()) r.cycle = Cycle(pairs_from(c, path + ".cycle", dim));
  const json& s = field(j, "sum", path);
  if (!s.is_null()) r.sum = rational_from(s, path + ".sum");
  r.samples_used = field(j, "samples_used", path).get<std::uint64_t>();
  return r;
}

inline json to_json(const ConstructionStep& s) {
  return json{{"k", s.k},
              {"xk", to_json(s.xk)},
              {"fiber", to_json(s.fiber_h)},
              {"Ek", to_json(s.Ek)},
              {"rays", to_json(s.rays)},
              {"lineality", to_json(s.lineality)},
              {"pmono_after", s.pmono_after},
              {"rays_match_normal_cone", s.rays_match_normal_cone}};
}

inline json to_json(const ConstructionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  return json{{"seed", to_json(t.seed)},
              {"p", t.p},
              {"steps", steps},
              {"final_F", to_json(t.final_F)},
              {"hull", to_json(t.hull.points())},
              {"final_fibers_match", t.final_fibers_match}};
}

inline ConstructionTrace trace_from(const json& j, const std::string& path = "$") {
  ConstructionTrace t;
  t.seed = operator_from(field(j, "seed", path), path + ".seed").op();
  const std::size_t d = t.seed.dim();
  t.p = field(j, "p", path).get<int>();
  const json& steps = field(j, "steps", path);
  if (!steps.is_array()) throw ParseError(path + ".steps: expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string p = path + ".steps[" + std::to_string(i) + "]";
    const json& s = steps[i];
    ConstructionStep st;
    st.k = field(s, "k", p).get<std::size_t>();
    st.xk = qvector_from(field(s, "xk", p), p + ".xk", d);
    st.fiber_h = hpolyhedron_from(field(s, "fiber", p), p + ".fiber");
    st.Ek = qvectors_from(field(s, "Ek", p), p + ".Ek", d);
    st.rays = qvectors_from(field(s, "rays", p), p + ".rays", d);
    st.lineality = qvectors_from(field(s, "lineality", p), p + ".lineality", d);
    st.pmono_after = field(s, "pmono_after", p).get<bool>();
    st.rays_match_normal_cone = field(s, "rays_match_normal_cone", p).get<bool>();
    t.steps.push_back(std::move(st));
  }
  t.final_F = operator_from(field(j, "final_F", path), path + ".final_F").op();
  t.hull = PolytopeHull(qvectors_from(field(j, "hull", path), path + ".hull", d));
  for (const auto& b : field(j, "final_fibers_match", path)) t.final_fibers_match.push_back(b.get<bool>());
  return t;
}

// ---- envelopes -------------------------------------------------------------

inline std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct Meta {
  int p = 1;
  std::string tool_version = kToolVersion;
  std::string input_hash;
  friend bool operator==(const Meta&, const Meta&) = default;
};

/// {kind, payload, meta}. Keys are emitted in sorted order, so equal documents
/// serialise to equal bytes.
struct ResultDocument {
  std::string kind;
  json payload;
  Meta meta;

  std::string dump() const {
    json j{{"kind", kind},
           {"payload", payload},
           {"meta", {{"p", meta.p}, {"tool-version", meta.tool_version}, {"input-hash", meta.input_hash}}}};
    return j.dump(2) + "\n";
  }

  static ResultDocument parse(std::string_view text) {
    const json j = parse_text(text);
    ResultDocument d;
    d.kind = field(j, "kind", "$").get<std::string>();
    static const char* kinds[] = {"pmono", "fiber", "vrep", "domain", "trace", "falsify", "ntilde", "mtilde", "chain"};
    if (std::find(std::begin(kinds), std::end(kinds), d.kind) == std::end(kinds))
      throw ParseError("$.kind: unknown result kind '" + d.kind + "'");
    d.payload = field(j, "payload", "$");
    const json& m = field(j, "meta", "$");
    d.meta.p = field(m, "p", "$.meta").get<int>();
    d.meta.tool_version = field(m, "tool-version", "$.meta").get<std::string>();
    d.meta.input_hash = field(m, "input-hash", "$.meta").get<std::string>();
    return d;
  }

  friend bool operator==(const ResultDocument& a, const ResultDocument& b) {
    return a.kind == b.kind && a.payload == b.payload && a.meta == b.meta;
  }
};

}  // namespace pcm::io
