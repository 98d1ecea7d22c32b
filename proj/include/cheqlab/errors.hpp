#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cheqlab {

// Base class of every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The reflexive-transitive closure of the given covers is not antisymmetric.
class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateLabelError : public Error {
 public:
  using Error::Error;
};

// A construction would exceed the configured point budget.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class EmptySeedError : public Error {
 public:
  using Error::Error;
};

class NotRootedError : public Error {
 public:
  using Error::Error;
};

class NotAtomError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

class UnknownAxiomError : public Error {
 public:
  using Error::Error;
};

class BadIndexError : public Error {
 public:
  using Error::Error;
};

class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

// Operation mixing values bound to different posets.
class MixedPosetError : public Error {
 public:
  using Error::Error;
};

class NotUpwardClosedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration ran past its budget. Distinct from a definitive
// negative answer: callers must not treat this as "none exists".
class SearchBudgetError : public Error {
 public:
  explicit SearchBudgetError(const std::string& what, uint64_t estimate = 0)
      : Error(what), estimate_(estimate) {}
  uint64_t estimate() const { return estimate_; }

 private:
  uint64_t estimate_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& expected)
      : Error("parse error at position " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(expected) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace cheqlab
