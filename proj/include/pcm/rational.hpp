#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "pcm/errors.hpp"

namespace pcm {

/// Exact rational scalar. GMP keeps it in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(num, den);
}

/// Parses "int", "int/int" or a plain decimal such as "-0.25".
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return InputError("invalid rational '" + std::string(text) + "': " + why);
  };
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (text.empty()) throw bad("empty");
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw bad("expected int/int");
    Integer d{std::string(den)};
    if (d == 0) throw bad("zero denominator");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((!ip.empty() && !digits(ip)) || !digits(fp)) throw bad("malformed decimal");
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(fp.size()));
    Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip));
    value = Rational(whole * scale + Integer(std::string(fp)), scale);
  } else {
    if (!digits(body)) throw bad("expected an integer");
    value = Rational(Integer(std::string(body)));
  }
  return negative ? Rational(-value) : value;
}

/// Canonical text form: "n" or "n/d" in lowest terms.
inline std::string to_string(const Rational& q) { return q.str(); }

/// Rational vector of fixed dimension; the primal and dual spaces are identified.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t dim) : coords_(dim) {}
  explicit QVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  QVector(std::initializer_list<Rational> coords) : coords_(coords) {}

  static QVector zero(std::size_t dim) { return QVector(dim); }

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
  }

  QVector& operator+=(const QVector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  QVector& operator-=(const QVector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  QVector& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  friend QVector operator-(QVector a) { return a *= Rational(-1); }
  friend QVector operator*(const Rational& s, QVector a) { return a *= s; }

  friend Rational dot(const QVector& a, const QVector& b) {
    a.require_same_dim(b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a.coords_[i] * b.coords_[i];
    return s;
  }

  friend bool operator==(const QVector& a, const QVector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const QVector& a, const QVector& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }
  friend bool operator!=(const QVector& a, const QVector& b) { return !(a == b); }
  friend bool operator>(const QVector& a, const QVector& b) { return b < a; }
  friend bool operator<=(const QVector& a, const QVector& b) { return !(b < a); }
  friend bool operator>=(const QVector& a, const QVector& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const QVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v.coords_[i].str();
    return os << ')';
  }

  void require_same_dim(const QVector& o) const {
    if (o.dim() != dim())
      throw InputError("dimension mismatch: " + std::to_string(dim()) + " vs " +
                       std::to_string(o.dim()));
  }

 private:
  std::vector<Rational> coords_;
};

inline std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

/// Parses a comma separated list of rationals, e.g. "1/2,-1,0".
inline QVector parse_qvector(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    coords.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return QVector(std::move(coords));
}

}  // namespace pcm
