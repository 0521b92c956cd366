#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinorq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver did not converge for one eigenpair.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// No energy window gives a size-independent microcanonical prediction.
class NoValidWindow : public Error {
 public:
  using Error::Error;
};

/// The spectrum has no interior nonthermal (kink) state.
class NoKink : public Error {
 public:
  using Error::Error;
};

/// Overlap distribution too sparse or multi-peaked for a timescale estimate.
class UndefinedTimescale : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

/// Retained eigenstate weight is below the requested completeness.
class RetentionError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinorq
