#ifndef VORTWAVE_NUMERICS_QUADRATURE_HPP
#define VORTWAVE_NUMERICS_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "vortwave/errors.hpp"

namespace vortwave::numerics {

enum class EndpointSingularity { None, InverseSqrt };

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  EndpointSingularity left = EndpointSingularity::None;
  EndpointSingularity right = EndpointSingularity::None;
  int max_intervals = 4000;

  QuadratureSpec with_left_singular() const {
    QuadratureSpec s = *this;
    s.left = EndpointSingularity::InverseSqrt;
    return s;
  }
  QuadratureSpec with_right_singular() const {
    QuadratureSpec s = *this;
    s.right = EndpointSingularity::InverseSqrt;
    return s;
  }
  QuadratureSpec regular() const {
    QuadratureSpec s = *this;
    s.left = s.right = EndpointSingularity::None;
    return s;
  }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae on [0,1)
// of the symmetric rule on [-1,1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
double checked_eval(const F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at x = " << x << " (value " << v << ")";
    throw InvalidIntegrandError(os.str());
  }
  return v;
}

template <class F>
Panel kronrod_panel(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
    const double sum = checked_eval(f, center - dx) + checked_eval(f, center + dx);
    kronrod += kKronrodWeights[static_cast<std::size_t>(i)] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * sum;
  }
  return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Globally adaptive Gauss-Kronrod on a bounded integrand.
template <class F>
double adaptive_kronrod(const F& f, double a, double b, const QuadratureSpec& spec) {
  if (a == b) return 0.0;
  std::priority_queue<Panel> queue;
  Panel first = kronrod_panel(f, a, b);
  double total = first.value;
  double total_error = first.error;
  double previous_total = total;
  queue.push(first);
  int intervals = 1;
  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (intervals >= spec.max_intervals) {
      std::ostringstream os;
      os << "quadrature did not converge on [" << a << ", " << b << "] after " << intervals
         << " panels: last estimate " << total << ", previous " << previous_total
         << ", error estimate " << total_error;
      throw ConvergenceError(os.str(), total, previous_total);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel collapsed to adjacent doubles; accept it as is.
      total_error -= worst.error;
      Panel frozen = worst;
      frozen.error = 0.0;
      queue.push(frozen);
      ++intervals;
      if (total_error <= 0.0 || queue.top().error == 0.0) break;
      continue;
    }
    const Panel left = kronrod_panel(f, worst.a, mid);
    const Panel right = kronrod_panel(f, mid, worst.b);
    previous_total = total;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }
  // Re-sum to limit cancellation from the running updates.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

}  // namespace detail

/// Integrates f over [a, b].
///
/// Endpoints marked InverseSqrt may carry a blow-up no worse than
/// |x - endpoint|^(-1/2). They are removed by the substitution
/// x = endpoint +/- v^2, which turns such integrands bounded (and analytic
/// when f is a smooth function over a square root). When both ends are
/// marked, the interval is split at its midpoint.
template <class F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw ValidationError("quadrature tolerances must be strictly positive");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("quadrature limits must be finite");
  }
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, QuadratureSpec{spec.abs_tol, spec.rel_tol, spec.right,
                                                        spec.left, spec.max_intervals});

  const bool left = spec.left == EndpointSingularity::InverseSqrt;
  const bool right = spec.right == EndpointSingularity::InverseSqrt;
  if (left && right) {
    const double mid = 0.5 * (a + b);
    QuadratureSpec half = spec;
    half.abs_tol = 0.5 * spec.abs_tol;
    half.right = EndpointSingularity::None;
    const double lower = integrate(f, a, mid, half);
    half.left = EndpointSingularity::None;
    half.right = EndpointSingularity::InverseSqrt;
    return lower + integrate(f, mid, b, half);
  }
  if (left) {
    auto g = [&](double v) { return 2.0 * v * f(a + v * v); };
    return detail::adaptive_kronrod(g, 0.0, std::sqrt(b - a), spec);
  }
  if (right) {
    auto g = [&](double v) { return 2.0 * v * f(b - v * v); };
    return detail::adaptive_kronrod(g, 0.0, std::sqrt(b - a), spec);
  }
  return detail::adaptive_kronrod(f, a, b, spec);
}

}  // namespace vortwave::numerics

#endif  // VORTWAVE_NUMERICS_QUADRATURE_HPP
