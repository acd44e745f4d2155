#include "tempscat/error.hpp"

namespace tempscat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::precondition: return "precondition_failed";
    case ErrorCode::ambiguous: return "ambiguous_time";
    case ErrorCode::consistency: return "consistency_error";
    case ErrorCode::degenerate: return "degenerate_case";
    case ErrorCode::no_solution: return "no_solution";
    case ErrorCode::constraint: return "constraint_violation";
    case ErrorCode::stiffness: return "stiff_integration";
    case ErrorCode::resolution: return "resolution_error";
    case ErrorCode::config: return "config_error";
    case ErrorCode::io: return "io_error";
  }
  return "unknown_error";
}

}  // namespace tempscat
