#ifndef VORTWAVE_OPTIONS_HPP
#define VORTWAVE_OPTIONS_HPP

#include "vortwave/numerics/ode.hpp"
#include "vortwave/numerics/quadrature.hpp"

namespace vortwave {

// Tolerances shared by every module. Defaults follow the library-wide policy:
// kernels at 1e-12 absolute / 1e-10 relative, everything downstream looser.
struct NumericOptions {
  numerics::QuadratureSpec quadrature{};
  numerics::IvpOptions ivp{};
  double root_tol = 1e-14;
  // Distance above s0 below which d(s) is reported divergent when d0 = +inf.
  double guard_band = 1e-9;

  static NumericOptions with_tolerance(double tol) {
    NumericOptions o;
    o.quadrature.abs_tol = tol;
    o.quadrature.rel_tol = tol * 100.0;
    o.ivp.abs_tol = tol;
    o.ivp.rel_tol = tol;
    return o;
  }
};

}  // namespace vortwave

#endif  // VORTWAVE_OPTIONS_HPP
