#pragma once

// Finite multivalued operators, cyclic sums and the p-cyclic monotonicity test.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/rational.hpp"

namespace pcm {

/// One graph element (x, x*) of an operator.
struct PointPair {
  QVector x;
  QVector xs;

  PointPair() = default;
  PointPair(QVector x_, QVector xs_) : x(std::move(x_)), xs(std::move(xs_)) {
    if (x.dim() != xs.dim()) throw InputError("point pair with mismatched dimensions");
    if (x.dim() == 0) throw InputError("point pair of dimension zero");
  }

  std::size_t dim() const noexcept { return x.dim(); }

  friend bool operator==(const PointPair& a, const PointPair& b) {
    return a.x == b.x && a.xs == b.xs;
  }
  friend bool operator!=(const PointPair& a, const PointPair& b) { return !(a == b); }
  friend bool operator<(const PointPair& a, const PointPair& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.xs < b.xs;
  }
};

/// Finite operator stored as a sorted, duplicate-free set of pairs.
class FiniteOperator {
 public:
  FiniteOperator() = default;

  FiniteOperator(std::size_t dim, std::vector<PointPair> pairs) : dim_(dim), pairs_(std::move(pairs)) {
    if (dim_ == 0) throw InputError("operator dimension must be positive");
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (pairs_[i].dim() != dim_)
        throw InputError("pair " + std::to_string(i) + " has dimension " +
                         std::to_string(pairs_[i].dim()) + ", expected " + std::to_string(dim_));
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  explicit FiniteOperator(const std::vector<PointPair>& pairs) : FiniteOperator(dim_of(pairs), pairs) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<PointPair>& pairs() const noexcept { return pairs_; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  bool contains(const PointPair& pp) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), pp);
  }

  /// Distinct domain points in lexicographic order.
  std::vector<QVector> domain() const {
    std::vector<QVector> out;
    for (const auto& pp : pairs_)
      if (out.empty() || out.back() != pp.x) out.push_back(pp.x);
    return out;
  }

  /// Distinct range points in lexicographic order.
  std::vector<QVector> range() const {
    std::vector<QVector> out;
    for (const auto& pp : pairs_) out.push_back(pp.xs);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  FiniteOperator with(const PointPair& pp) const {
    auto ps = pairs_;
    ps.push_back(pp);
    return FiniteOperator(dim_, std::move(ps));
  }

  friend bool operator==(const FiniteOperator& a, const FiniteOperator& b) {
    return a.dim_ == b.dim_ && a.pairs_ == b.pairs_;
  }

 private:
  static std::size_t dim_of(const std::vector<PointPair>& ps) { return ps.empty() ? 0 : ps.front().dim(); }

  std::size_t dim_ = 0;
  std::vector<PointPair> pairs_;
};

/// All x* with (z1, x*) in F, sorted.
inline std::vector<QVector> image(const FiniteOperator& F, const QVector& z1) {
  std::vector<QVector> out;
  for (const auto& pp : F)
    if (pp.x == z1) out.push_back(pp.xs);
  return out;
}

/// All x with (x, zps) in F, sorted.
inline std::vector<QVector> preimage(const FiniteOperator& F, const QVector& zps) {
  std::vector<QVector> out;
  for (const auto& pp : F)
    if (pp.xs == zps) out.push_back(pp.x);
  return out;
}

/// A closed tour (x_0, x_0*), ..., (x_p, x_p*) with x_{p+1} = x_0.
class Cycle {
 public:
  explicit Cycle(std::vector<PointPair> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw InputError("a cycle needs at least two entries");
    for (const auto& e : entries_)
      if (e.dim() != entries_.front().dim()) throw InputError("cycle entries differ in dimension");
  }

  std::size_t p() const noexcept { return entries_.size() - 1; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<PointPair>& entries() const noexcept { return entries_; }
  const PointPair& operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const Cycle& a, const Cycle& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<PointPair> entries_;
};

/// sum_k <x_{k+1} - x_k, x_k*> over the closed sequence, evaluated exactly.
inline Rational cyclic_sum(std::span<const PointPair> entries) {
  Rational s = 0;
  const std::size_t r = entries.size();
  for (std::size_t k = 0; k < r; ++k) {
    const auto& cur = entries[k];
    const auto& nxt = entries[(k + 1) % r];
    s += dot(nxt.x - cur.x, cur.xs);
  }
  return s;
}

inline Rational cyclic_sum(const Cycle& cycle) { return cyclic_sum(std::span(cycle.entries())); }

/// Odometer over all ordered n-tuples (with repetition) of indices into a pool of
/// `pool_size` items. Order is lexicographic in the index sequence; state is O(n).
class TupleEnumerator {
 public:
  TupleEnumerator(std::size_t pool_size, std::size_t n) : pool_(pool_size), idx_(n, 0) {
    if (n == 0) throw InputError("tuple length must be positive");
    done_ = pool_size == 0;
  }

  bool done() const noexcept { return done_; }
  std::span<const std::size_t> indices() const noexcept { return idx_; }

  void advance() {
    for (std::size_t pos = idx_.size(); pos-- > 0;) {
      if (++idx_[pos] < pool_) return;
      idx_[pos] = 0;
    }
    done_ = true;
  }

 private:
  std::size_t pool_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

/// Calls `fn(std::span<const PointPair* const>)` for each N-tuple of F, in
/// TupleEnumerator order. Returning false from `fn` stops the stream.
template <typename Fn>
void enumerate_tuples(std::span<const PointPair> pool, std::size_t n, Fn&& fn) {
  std::vector<const PointPair*> tuple(n);
  for (TupleEnumerator it(pool.size(), n); !it.done(); it.advance()) {
    auto ix = it.indices();
    for (std::size_t i = 0; i < n; ++i) tuple[i] = &pool[ix[i]];
    if constexpr (std::is_same_v<decltype(fn(std::span<const PointPair* const>(tuple))), bool>) {
      if (!fn(std::span<const PointPair* const>(tuple))) return;
    } else {
      fn(std::span<const PointPair* const>(tuple));
    }
  }
}

inline constexpr int kDefaultMaxCyclicity = 4;

/// Enumeration cap on p; PCM_MAX_P in the environment overrides the default of 4.
inline int enumeration_cap() {
  if (const char* env = std::getenv("PCM_MAX_P")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  return kDefaultMaxCyclicity;
}

inline void check_cyclicity(int p) {
  if (p < 1) throw InputError("cyclicity p must be at least 1, got " + std::to_string(p));
  if (p > enumeration_cap())
    throw LimitError("p = " + std::to_string(p) + " exceeds the enumeration cap " +
                     std::to_string(enumeration_cap()) + " (set PCM_MAX_P to raise it)");
}

struct PMonoResult {
  bool verdict = true;
  Rational max_sum;
  std::optional<Cycle> witness;
};

namespace detail {

/// gram[i][j] = <x_j, x_i*>, so <x_j - x_i, x_i*> = gram[i][j] - gram[i][i].
inline std::vector<std::vector<Rational>> pair_gram(std::span<const PointPair> pairs) {
  const std::size_t n = pairs.size();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = dot(pairs[j].x, pairs[i].xs);
  return g;
}

}  // namespace detail

/// Maximum cyclic sum over all (p+1)-tuples of F; the operator is p-cyclically
/// monotone iff that maximum is <= 0. The witness is the first maximiser in
/// tuple-stream order.
inline PMonoResult is_p_mono(const FiniteOperator& F, int p) {
  check_cyclicity(p);
  if (F.empty()) throw InputError("is_p_mono needs a nonempty operator");
  const auto& pairs = F.pairs();
  const auto gram = detail::pair_gram(pairs);
  const std::size_t len = static_cast<std::size_t>(p) + 1;

  PMonoResult res;
  std::vector<std::size_t> best;
  bool first = true;
  Rational s;
  for (TupleEnumerator it(pairs.size(), len); !it.done(); it.advance()) {
    auto ix = it.indices();
    s = 0;
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t i = ix[k], j = ix[(k + 1) % len];
      s += gram[i][j];
      s -= gram[i][i];
    }
    if (first || s > res.max_sum) {
      res.max_sum = s;
      best.assign(ix.begin(), ix.end());
      first = false;
    }
  }
  res.verdict = res.max_sum <= 0;
  if (!res.verdict) {
    std::vector<PointPair> entries;
    for (auto i : best) entries.push_back(pairs[i]);
    res.witness = Cycle(std::move(entries));
  }
  return res;
}

}  // namespace pcm
