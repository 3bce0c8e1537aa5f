#include "coherence/error.hpp"

namespace coherence {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::capacity_exceeded: return "capacity-exceeded";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::invalid_state: return "invalid-state";
    case ErrorKind::undefined_correlation: return "undefined-correlation";
    case ErrorKind::solver_failure: return "solver-failure";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::undefined_gradient: return "undefined-gradient";
    case ErrorKind::usage: return "usage-error";
    case ErrorKind::io: return "io-error";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace coherence
