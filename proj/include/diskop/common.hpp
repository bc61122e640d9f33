#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace diskop {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in a symbol expression; carries the byte offset.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// Evaluation produced a non-finite value inside the disk.
struct SingularityError : Error {
  using Error::Error;
};

/// Argument outside the domain of an operation (radius, exponent range, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Requested combination has no supported formula or representation.
struct UnsupportedError : Error {
  using Error::Error;
};

/// Custom weight profile violates the (0,1] codomain or radial constraints.
struct InvalidWeightError : Error {
  using Error::Error;
};

/// A quadrature self-check failed (e.g. test-function norm off).
struct QuadratureError : Error {
  using Error::Error;
};

}  // namespace diskop
