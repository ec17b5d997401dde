#ifndef VORTWAVE_ERRORS_HPP
#define VORTWAVE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vortwave {

// Root of every error the library throws. Numerical failures derive from
// NumericalError, bad user input from ValidationError; the CLI maps the two
// families onto different exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a function (tau outside [0,1], s below s0, ...).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// No stream solution exists for the requested Bernoulli constant (r < r_c).
class NoSolutionError : public ValidationError {
 public:
  NoSolutionError(const std::string& what, double critical) : ValidationError(what), r_c(critical) {}
  double r_c;
};

// A sampled column of psi is not strictly increasing in y (counter-current or
// stagnation), so it cannot be mapped to the hodograph strip.
class UnidirectionalityError : public ValidationError {
 public:
  UnidirectionalityError(const std::string& what, std::size_t col, double lower, double upper)
      : ValidationError(what), column(col), y_lower(lower), y_upper(upper) {}
  std::size_t column;
  double y_lower;
  double y_upper;
};

class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last, double previous)
      : NumericalError(what), last_estimate(last), previous_estimate(previous) {}
  explicit ConvergenceError(const std::string& what)
      : NumericalError(what), last_estimate(0.0), previous_estimate(0.0) {}

  double last_estimate;
  double previous_estimate;
};

class InvalidIntegrandError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StiffnessError : public NumericalError {
 public:
  StiffnessError(const std::string& what, double where)
      : NumericalError(what), location(where) {}
  double location;
};

class ResonanceError : public NumericalError {
 public:
  ResonanceError(const std::string& what, double value)
      : NumericalError(what), endpoint_value(value) {}
  double endpoint_value;
};

class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoCrossingError : public NumericalError {
 public:
  NoCrossingError(const std::string& what, double y, double u, double du)
      : NumericalError(what), final_y(y), final_u(u), final_slope(du) {}
  double final_y;
  double final_u;
  double final_slope;
};

class AssumptionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace vortwave

#endif  // VORTWAVE_ERRORS_HPP
