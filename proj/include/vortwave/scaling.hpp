#ifndef VORTWAVE_SCALING_HPP
#define VORTWAVE_SCALING_HPP

#include <cmath>
#include <sstream>
#include <string>

#include "vortwave/errors.hpp"

namespace vortwave {

enum class Quantity { Length, Velocity };

inline Quantity parse_quantity(const std::string& name) {
  if (name == "length") return Quantity::Length;
  if (name == "velocity") return Quantity::Velocity;
  throw ValidationError("unknown quantity '" + name + "' (expected length or velocity)");
}

/// (Q^2/g)^(1/3) for lengths, (Q g)^(1/3) for velocities.
inline double reference_scale(double Q, double g, Quantity quantity) {
  if (!(Q > 0.0) || !(g > 0.0) || !std::isfinite(Q) || !std::isfinite(g)) {
    std::ostringstream os;
    os << "flow rate Q = " << Q << " and gravity g = " << g << " must be positive";
    throw DomainError(os.str());
  }
  return quantity == Quantity::Length ? std::cbrt(Q * Q / g) : std::cbrt(Q * g);
}

/// Dimensional value -> non-dimensional (or back when inverse is set).
inline double scale_to_nondimensional(double Q, double g, Quantity quantity, double value, bool inverse = false) {
  const double scale = reference_scale(Q, g, quantity);
  return inverse ? value * scale : value / scale;
}

}  // namespace vortwave

#endif  // VORTWAVE_SCALING_HPP
