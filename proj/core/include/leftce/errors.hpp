#pragma once

#include <stdexcept>
#include <string>

namespace leftce {

/// Malformed input text (JSON, dyadic literal, bit string, ...).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but breaks a construction's contract, e.g. a
/// decreasing left-c.e. stream or an over-budget weight request.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace leftce
