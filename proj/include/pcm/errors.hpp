#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad rational strings, dimension mismatches, empty operators.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the set an operation requires it to be in.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested cyclicity order exceeds the enumeration cap.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis fails on the given data; `index` names the offending item.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The construction cannot continue (non-monotone seed, vertex-free fiber, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcm
