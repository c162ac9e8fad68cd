#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobiuscf/integer.hpp"

namespace mcf {

struct Failure {
  Integer index;
  std::string lhs, rhs;
};

// Outcome of sweeping one identity over an index range. threshold and shift
// are only filled by the searched equalities, where the match is allowed to
// begin late and at a fixed index displacement.
struct VerificationReport {
  std::string branch;
  Integer lo{0}, hi{-1};
  std::size_t passes = 0;
  std::vector<Failure> failures;
  std::optional<Integer> threshold;
  std::optional<Integer> shift;

  bool ok() const { return failures.empty() && passes > 0; }
};

}  // namespace mcf
