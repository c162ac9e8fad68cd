#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& msg = "evaluation at a pole") : std::runtime_error(msg) {}
};

struct StreamExhausted : std::runtime_error {
  explicit StreamExhausted(const std::string& msg = "quotient stream exhausted") : std::runtime_error(msg) {}
};

// Parse failures carry the character offset of the offending token.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t at, const std::string& msg)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

struct BadDeterminant : std::runtime_error {
  explicit BadDeterminant(const std::string& msg = "unexpected determinant") : std::runtime_error(msg) {}
};

struct ParityError : std::runtime_error {
  explicit ParityError(const std::string& msg = "argument has wrong parity") : std::runtime_error(msg) {}
};

struct NotApplicable : std::runtime_error {
  explicit NotApplicable(const std::string& msg = "no applicable branch") : std::runtime_error(msg) {}
};

struct ClassMismatch : std::runtime_error {
  explicit ClassMismatch(const std::string& msg = "parity class mismatch") : std::runtime_error(msg) {}
};

struct ArityError : std::runtime_error {
  explicit ArityError(const std::string& msg = "wrong number of quotients") : std::runtime_error(msg) {}
};

struct NonIntegerCoefficient : std::runtime_error {
  explicit NonIntegerCoefficient(const std::string& msg = "coefficient is not an integer")
      : std::runtime_error(msg) {}
};

struct NonPositiveQuotient : std::runtime_error {
  explicit NonPositiveQuotient(const std::string& msg = "partial quotient below 1") : std::runtime_error(msg) {}
};

struct StalledError : std::runtime_error {
  explicit StalledError(const std::string& msg = "digit emission stalled") : std::runtime_error(msg) {}
};

struct BranchRequired : std::runtime_error {
  explicit BranchRequired(const std::string& msg = "index function needs a tail branch") : std::runtime_error(msg) {}
};

struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& msg = "index out of range") : std::runtime_error(msg) {}
};

struct AlignmentError : std::runtime_error {
  explicit AlignmentError(const std::string& msg = "tail alignment not found") : std::runtime_error(msg) {}
};

}  // namespace mcf
