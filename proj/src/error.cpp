#include "srret/error.hpp"

namespace srret {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NonUnitDipole: return "NonUnitDipole";
    case ErrorCode::DegenerateEnsemble: return "DegenerateEnsemble";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BadAngles: return "BadAngles";
    case ErrorCode::AcceptorInsideSphere: return "AcceptorInsideSphere";
    case ErrorCode::BadShell: return "BadShell";
    case ErrorCode::AcceptorInsideSupport: return "AcceptorInsideSupport";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace srret
