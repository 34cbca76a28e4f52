#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ravopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorCode {
  NonFiniteGradient,
  TargetAboveValue,
  MissingFStar,
  EmptyTrace,
  OriginSingularity,
  ShapeMismatch,
  ZeroNeuron,
  NewtonDivergence,
  RankAmbiguity,
  DegenerateProjection,
  InsufficientValidSamples,
  InsufficientData,
  ConfigInvalid,
  UnsupportedCheck,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<long> index = std::nullopt);

 protected:
  struct Preformatted {};
  Error(Preformatted, ErrorCode code, const std::string& what, std::optional<long> index)
      : std::runtime_error(what), code_(code), index_(index) {}

 public:

  ErrorCode code() const { return code_; }
  // Iteration index at which the failure happened, when known.
  std::optional<long> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<long> index_;
};

// Tolerance used when comparing a value against a known lower bound.
inline double float_slack(double reference) {
  return 1e-10 * (1.0 + std::abs(reference));
}

}  // namespace ravopt
