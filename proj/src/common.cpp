#include "ravopt/common.hpp"

namespace ravopt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::TargetAboveValue: return "TargetAboveValue";
    case ErrorCode::MissingFStar: return "MissingFStar";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroNeuron: return "ZeroNeuron";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::RankAmbiguity: return "RankAmbiguity";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::InsufficientValidSamples: return "InsufficientValidSamples";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnsupportedCheck: return "UnsupportedCheck";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

static std::string format_message(ErrorCode code, const std::string& message,
                                  std::optional<long> index) {
  std::string out(to_string(code));
  if (index) out += " at iteration " + std::to_string(*index);
  if (!message.empty()) out += ": " + message;
  return out;
}

Error::Error(ErrorCode code, const std::string& message, std::optional<long> index)
    : std::runtime_error(format_message(code, message, index)), code_(code), index_(index) {}

}  // namespace ravopt
