#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flatgraph {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)) {}
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class KernelNotTrivial : public Error {
 public:
  KernelNotTrivial() : Error("weight matrix has a nontrivial kernel (uniscalar subgroup is not trivial)") {}
};

class CertificationFailed : public Error {
 public:
  explicit CertificationFailed(std::int64_t bound)
      : Error("generator certification failed at norm bound " + std::to_string(bound) +
              "; raise the bound (try " + std::to_string(2 * bound + 1) + ")"),
        bound_(bound) {}
  std::int64_t bound() const { return bound_; }

 private:
  std::int64_t bound_;
};

class NonPrimeModulus : public Error {
 public:
  explicit NonPrimeModulus(std::int64_t value)
      : Error("modulus " + std::to_string(value) + " is not prime"), value_(value) {}
  std::int64_t value() const { return value_; }

 private:
  std::int64_t value_;
};

class NotInSemigroup : public Error {
 public:
  using Error::Error;
};

class LevelNotComparable : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class FiberTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace flatgraph
