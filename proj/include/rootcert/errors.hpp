#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rootcert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse-time errors carry the byte offset of the offending token.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(const std::string& msg, std::size_t off)
      : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

struct MultipleVariablesError : Error {
  std::size_t offset;
  MultipleVariablesError(const std::string& name, std::size_t off)
      : Error("unknown identifier '" + name + "'; the only variable is 'x'"),
        offset(off) {}
};

struct NonConstantExponentError : Error {
  std::size_t offset;
  explicit NonConstantExponentError(std::size_t off)
      : Error("exponent must be a constant expression"), offset(off) {}
};

struct DomainError : Error {
  using Error::Error;
};

struct NoSignChangeError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct DerivativeZeroError : Error {
  using Error::Error;
};

}  // namespace rootcert
