#include "wavebranch/error.hpp"

namespace wavebranch {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::SingularInput: return "singular_input";
    case ErrorKind::NoSolution: return "no_solution";
    case ErrorKind::ShootingDegeneracy: return "shooting_degeneracy";
    case ErrorKind::BracketFailure: return "bracket_failure";
    case ErrorKind::DiscretizationFailure: return "discretization_failure";
    case ErrorKind::NearResonance: return "near_resonance";
    case ErrorKind::Stagnation: return "stagnation";
    case ErrorKind::HodographBreakdown: return "hodograph_breakdown";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::NoRoot: return "no_root";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace wavebranch
