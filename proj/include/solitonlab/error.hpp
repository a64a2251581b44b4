#pragma once

#include <stdexcept>
#include <string>

namespace solitonlab {

enum class ErrorCode {
  InvalidInput,
  InvalidMetric,
  UnsupportedDerivation,
  DomainError,
  SingularityReached,
  StiffnessError,
  InvalidPerturbation,
  InvalidWeight,
  NotInCatalog,
  GridTooCoarse,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the integrators when the metric stops being positive definite.
class SingularityReached : public Error {
 public:
  SingularityReached(double t, const std::string& what)
      : Error(ErrorCode::SingularityReached, what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace solitonlab
