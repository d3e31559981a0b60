#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opgp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed operator expression; position is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A Buchberger run exceeded its pair-reduction ceiling.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or a failed factorization in the numeric layer.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, CSV, or other structured input.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace opgp
