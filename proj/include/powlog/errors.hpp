#pragma once

#include <stdexcept>
#include <string>

namespace powlog {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad evaluation point or malformed interval.
struct DomainError : Error {
  using Error::Error;
};

// |result| left the representable float range.
struct OverflowError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

// All point-selection trials were numerically singular.
struct DegenerateError : Error {
  using Error::Error;
};

struct SingularError : Error {
  using Error::Error;
};

// A term's exponent sign does not match the regime being certified.
struct RegimeError : Error {
  using Error::Error;
};

// A perturbation unit's declared deviation exceeds the admissible threshold.
struct DeltaError : Error {
  using Error::Error;
};

// The cell is not deep enough for the oscillatory window hypothesis.
struct WindowError : Error {
  using Error::Error;
};

// Fiberwise boundedness violated (beta > 0 with no finite upper boundary).
struct FormError : Error {
  using Error::Error;
};

struct AsymmetryError : Error {
  using Error::Error;
};

struct GridError : Error {
  using Error::Error;
};

struct NegativeError : Error {
  using Error::Error;
};

struct EmptyError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

// The oracle could not make the tail negligible within its horizon budget.
struct HorizonError : Error {
  using Error::Error;
};

// Subanalytic witness form requested for a sum with nonzero oscillation.
struct OscError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace powlog
