#include "randers/error.hpp"

namespace randers {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "InvalidParameter";
    case ErrorKind::metric_degenerate: return "MetricDegenerate";
    case ErrorKind::vertex_singular: return "VertexSingular";
    case ErrorKind::numerical_blowup: return "NumericalBlowup";
    case ErrorKind::invalid_bracket: return "InvalidBracket";
    case ErrorKind::inconsistent_input: return "InconsistentInput";
    case ErrorKind::search_horizon: return "SearchHorizon";
    case ErrorKind::horizon: return "Horizon";
    case ErrorKind::not_embeddable: return "NotEmbeddable";
    case ErrorKind::domain: return "Domain";
    case ErrorKind::verification_failed: return "VerificationFailed";
    case ErrorKind::parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace randers
