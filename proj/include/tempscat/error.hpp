#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tempscat {

enum class ErrorCode {
  domain,        // non-finite or out-of-range material or wave parameter
  precondition,  // caller violated a documented precondition
  ambiguous,     // profile sampled exactly on a discontinuity
  consistency,   // inputs disagree with the temporal Snell relations
  degenerate,    // omega2 == omega3; amplitudes are not unique
  no_solution,   // degenerate case with violated compatibility
  constraint,    // state is not divergence free / not a single polarization
  stiffness,     // adaptive step size underflow
  resolution,    // frequency gap below what a sampling grid can resolve
  config,        // malformed or invalid run configuration
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tempscat
