#ifndef VORTWAVE_NUMERICS_ROOTS_HPP
#define VORTWAVE_NUMERICS_ROOTS_HPP

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "vortwave/errors.hpp"

namespace vortwave::numerics {

struct Bracket {
  double lower;
  double upper;
  double f_lower;
  double f_upper;
};

template <class F>
Bracket make_bracket(const F& f, double lower, double upper) {
  return Bracket{lower, upper, f(lower), f(upper)};
}

struct Minimum {
  double argmin;
  double value;
};

/// Brent's method: inverse quadratic interpolation safeguarded by bisection.
/// Every iterate stays inside the current sign-change bracket. Stops when the
/// bracket is narrower than tol, or |f| <= f_tol.
template <class F>
double find_root(const F& f, const Bracket& bracket, double tol, double f_tol = 0.0) {
  double a = bracket.lower;
  double b = bracket.upper;
  double fa = bracket.f_lower;
  double fb = bracket.f_upper;
  if (!(a < b) || !std::isfinite(fa) || !std::isfinite(fb)) {
    std::ostringstream os;
    os << "invalid root bracket [" << a << ", " << b << "] with f values " << fa << ", " << fb;
    throw BracketError(os.str());
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "root bracket [" << a << ", " << b << "] has no sign change: f(lower) = " << fa
       << ", f(upper) = " << fb;
    throw BracketError(os.str());
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= f_tol) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (!std::isfinite(fb)) {
      std::ostringstream os;
      os << "root finder met a non-finite value at " << b;
      throw BracketError(os.str());
    }
  }
  return b;
}

template <class F>
double find_root(const F& f, double lower, double upper, double tol, double f_tol = 0.0) {
  return find_root(f, make_bracket(f, lower, upper), tol, f_tol);
}

/// Brent's golden-section / parabolic minimiser on [lower, upper]. The result
/// must be an interior minimum: if the best point is not below both end
/// values the bracket does not contain a minimum and BracketError is thrown.
template <class F>
Minimum minimize_unimodal(const F& f, double lower, double upper, double tol) {
  if (!(lower < upper)) {
    std::ostringstream os;
    os << "invalid minimisation bracket [" << lower << ", " << upper << "]";
    throw BracketError(os.str());
  }
  constexpr double golden = 0.3819660112501051;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = lower;
  double b = upper;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = std::sqrt(eps) * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x))) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) {
        a = x;
      } else {
        b = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  const double f_lower = f(lower);
  const double f_upper = f(upper);
  if (!(fx < f_lower && fx < f_upper)) {
    std::ostringstream os;
    os << "bracket [" << lower << ", " << upper << "] does not contain an interior minimum: f = "
       << f_lower << ", " << fx << " (at " << x << "), " << f_upper;
    throw BracketError(os.str());
  }
  return Minimum{x, fx};
}

}  // namespace vortwave::numerics

#endif  // VORTWAVE_NUMERICS_ROOTS_HPP
