#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shearhom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overlapping or out-of-cell shapes, negative filling fractions.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// A harmonic line average hit a zero-modulus chord.
class ZeroModulusLine : public Error {
 public:
  using Error::Error;
};

/// Too few samples per axis to resolve the requested Fourier range.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// The Neumann series stopped converging; `term()` is the offending index.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t term)
      : Error(what), term_(term) {}
  std::size_t term() const noexcept { return term_; }

 private:
  std::size_t term_;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A computed effective modulus came out negative or non-finite.
class InvalidResult : public Error {
 public:
  using Error::Error;
};

/// Closed-form estimate evaluated outside the regime where it is defined.
class InvalidRegime : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace shearhom
