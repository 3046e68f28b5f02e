#pragma once

#include <stdexcept>
#include <string>

namespace mhd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state left the admissible set (rho > 0, rho*e > 0, p > 0).
class AdmissibilityError : public Error {
 public:
  enum class Kind { NonpositiveDensity, NonpositiveInternalEnergy, NonpositivePressure };

  AdmissibilityError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class InvalidDomain : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class UnknownBoundaryMarker : public Error {
 public:
  using Error::Error;
};

class UnknownProblem : public Error {
 public:
  using Error::Error;
};

class InadmissibleIC : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mhd
