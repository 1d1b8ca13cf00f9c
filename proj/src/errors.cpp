#include "conetrace/types.hpp"

namespace conetrace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::CenterMismatch: return "CenterMismatch";
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::BoundaryProximity: return "BoundaryProximity";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::ResonanceAmbiguity: return "ResonanceAmbiguity";
    case ErrorCode::RankIndeterminate: return "RankIndeterminate";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SelectionAmbiguous: return "SelectionAmbiguous";
    case ErrorCode::DomainCountMismatch: return "DomainCountMismatch";
    case ErrorCode::SeriesDivergence: return "SeriesDivergence";
    case ErrorCode::ResonanceOverflow: return "ResonanceOverflow";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::ContourThroughZero: return "ContourThroughZero";
    case ErrorCode::NearEigenvalue: return "NearEigenvalue";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::TailDominates: return "TailDominates";
    case ErrorCode::SectorNotAdmissible: return "SectorNotAdmissible";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace conetrace
