#pragma once

#include <stdexcept>
#include <string>

namespace graphtex {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or incompatible configuration (maps to a usage error in the CLI).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The evolving level set lost its zero crossing.
class ContourVanished : public Error {
 public:
  /// iteration < 0 when the caller does not track iterations.
  explicit ContourVanished(long iteration)
      : Error(iteration < 0 ? std::string("contour vanished")
                            : "contour vanished at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  long iteration() const noexcept { return iteration_; }

 private:
  long iteration_;
};

}  // namespace graphtex
