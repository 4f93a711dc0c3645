#pragma once

#include <stdexcept>
#include <string>

namespace hopfforge {

// Malformed or inconsistent input (bad file, invalid datum, unknown key).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured size bound (group order, dimension) would be exceeded.
struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Randomized search exhausted its redraw budget.
struct SamplingError : std::runtime_error {
  explicit SamplingError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structure choice failed its machine verification.
struct InvalidStructureChoice : std::runtime_error {
  explicit InvalidStructureChoice(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Recognition input violates a hypothesis the reconstruction needs.
// what() carries the failing check name and a witness.
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace hopfforge
