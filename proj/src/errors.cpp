#include "tracegeo/core.hpp"

namespace tracegeo {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Singular:
      return "singular";
    case ErrorCode::DimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::NotSquare:
      return "not-square";
    case ErrorCode::NonFinite:
      return "non-finite";
    case ErrorCode::SpectrumOnCut:
      return "spectrum-on-cut";
    case ErrorCode::SpectrumNotPositive:
      return "spectrum-not-positive";
    case ErrorCode::NotSpecialOrthogonal:
      return "not-special-orthogonal";
    case ErrorCode::DegenerateMetric:
      return "degenerate-metric";
    case ErrorCode::NotUnimodular:
      return "not-unimodular";
    case ErrorCode::NonPositiveDeterminant:
      return "non-positive-determinant";
    case ErrorCode::NotSPD:
      return "not-spd";
    case ErrorCode::NotSymmetric:
      return "not-symmetric";
    case ErrorCode::NotUnique:
      return "not-unique";
    case ErrorCode::DifferentComponents:
      return "different-components";
    case ErrorCode::IllConditioned:
      return "ill-conditioned";
    case ErrorCode::DegenerateSection:
      return "degenerate-section";
    case ErrorCode::LinearlyDependent:
      return "linearly-dependent";
    case ErrorCode::OracleMismatch:
      return "oracle-mismatch";
    case ErrorCode::NotTangent:
      return "not-tangent";
    case ErrorCode::InvalidArgument:
      return "invalid-argument";
  }
  return "unknown";
}

}  // namespace tracegeo
