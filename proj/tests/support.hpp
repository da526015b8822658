#pragma once

#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pcm/io/json.hpp"
#include "pcm/pcm.hpp"

namespace pcm::test {

inline QVector V(const char* s) { return parse_qvector(s); }

inline FiniteOperator op(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<PointPair> ps;
  for (auto [a, b] : pairs) ps.emplace_back(V(a), V(b));
  return FiniteOperator(ps);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline io::OperatorDocument load(const std::string& name) {
  return io::parse_operator(slurp(std::string(PCM_DATA_DIR) + "/" + name + ".json"), name);
}

/// Processes the seed in file order, the order the worked examples use.
inline ConstructionTrace construct_in_file_order(const std::string& name, int p) {
  auto doc = load(name);
  ConstructOptions opt;
  opt.order = doc.order();
  return construct(doc.op(), p, opt);
}

inline VPolyhedron vset(std::size_t dim, std::vector<QVector> vs, std::vector<QVector> rs = {},
                        std::vector<QVector> ls = {}) {
  return VPolyhedron{dim, std::move(vs), std::move(rs), std::move(ls)}.canonical();
}

/// Random small instances: n pairs, integer entries in [-3, 3].
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  QVector point(std::size_t dim, int lo = -3, int hi = 3) {
    QVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// A rational point with denominators up to 4, used for probes.
  QVector probe(std::size_t dim) {
    QVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(uniform(-12, 12), uniform(1, 4));
    return v;
  }

  FiniteOperator op(std::size_t dim, std::size_t n) {
    std::vector<PointPair> ps;
    for (std::size_t i = 0; i < n; ++i) ps.emplace_back(point(dim), point(dim));
    return FiniteOperator(dim, ps);
  }

  /// p-cyclically monotone instance: gradients of a random convex quadratic
  /// sampled at random points (cyclically monotone for every p), with an
  /// occasional extra pair kept only if monotonicity survives.
  FiniteOperator mono_op(std::size_t dim, std::size_t n, int p) {
    std::vector<int> diag(dim);
    for (auto& d : diag) d = uniform(0, 2);
    std::vector<PointPair> ps;
    for (std::size_t i = 0; i < n; ++i) {
      QVector x = point(dim), g(dim);
      for (std::size_t k = 0; k < dim; ++k) g[k] = Rational(diag[k]) * x[k];
      ps.emplace_back(x, g);
    }
    FiniteOperator F(dim, ps);
    auto extra = F.with(PointPair(point(dim), point(dim)));
    if (is_p_mono(extra, p).verdict) return extra;
    return F;
  }
};

}  // namespace pcm::test
