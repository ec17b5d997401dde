#ifndef VORTWAVE_NUMERICS_ODE_HPP
#define VORTWAVE_NUMERICS_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

#include "vortwave/errors.hpp"

namespace vortwave::numerics {

template <std::size_t N>
using State = std::array<double, N>;

struct IvpOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 picks a step from the initial derivative
  double max_step = 0.0;      // 0 means unbounded
  long max_steps = 2'000'000;
  bool dense = true;          // false keeps only the end states
};

/// Dense-output trajectory of a Dormand-Prince 5(4) integration. Each accepted
/// step stores the 4th-order continuous extension of Hairer, Norsett & Wanner.
template <std::size_t N>
class Trajectory {
 public:
  struct Segment {
    double t0;
    double h;
    State<N> r1, r2, r3, r4, r5;
  };

  Trajectory() = default;
  Trajectory(double t0, const State<N>& y0) : t_start_(t0), t_end_(t0), y_start_(y0), y_end_(y0) {}

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  const State<N>& front() const { return y_start_; }
  const State<N>& back() const { return y_end_; }
  std::size_t steps() const { return segments_.size(); }
  const std::vector<Segment>& segments() const { return segments_; }
  bool forward() const { return segments_.empty() || segments_.front().h > 0.0; }

  /// State at t; t is clamped to the integrated span.
  State<N> operator()(double t) const {
    if (segments_.empty()) return y_start_;
    const Segment& seg = segment_for(t);
    double theta = (t - seg.t0) / seg.h;
    theta = std::clamp(theta, 0.0, 1.0);
    const double theta1 = 1.0 - theta;
    State<N> out{};
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = seg.r1[i] +
               theta * (seg.r2[i] + theta1 * (seg.r3[i] + theta * (seg.r4[i] + theta1 * seg.r5[i])));
    }
    return out;
  }

  double component(double t, std::size_t i) const { return (*this)(t)[i]; }

  void append(const Segment& seg, const State<N>& y_new, bool store = true) {
    if (store) segments_.push_back(seg);
    t_end_ = seg.t0 + seg.h;
    y_end_ = y_new;
  }

 private:
  const Segment& segment_for(double t) const {
    const bool fwd = forward();
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [fwd](double value, const Segment& s) {
                                 return fwd ? value < s.t0 : value > s.t0;
                               });
    if (it == segments_.begin()) return segments_.front();
    return *(it - 1);
  }

  double t_start_ = 0.0;
  double t_end_ = 0.0;
  State<N> y_start_{};
  State<N> y_end_{};
  std::vector<Segment> segments_;
};

namespace detail {

struct NoObserver {
  template <class S>
  bool operator()(double, const S&, double, const S&) const {
    return true;
  }
};

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction) with local
/// error control. The observer is called after every accepted step as
/// observer(t_prev, y_prev, t_new, y_new); returning false stops the
/// integration there. Throws StiffnessError when the step size underflows.
template <std::size_t N, class Rhs, class Observer = detail::NoObserver>
Trajectory<N> solve_ivp(const Rhs& rhs, const State<N>& y0, double t0, double t1,
                        const IvpOptions& opt = {}, Observer observer = {}) {
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                   a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Trajectory<N> traj(t0, y0);
  if (t0 == t1) return traj;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  auto scaled_norm = [&](const State<N>& err, const State<N>& ya, const State<N>& yb) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      const double q = err[i] / sc;
      sum += q * q;
    }
    return std::sqrt(sum / static_cast<double>(N));
  };

  double t = t0;
  State<N> y = y0;
  State<N> k1 = rhs(t, y);

  double h = opt.initial_step;
  if (h <= 0.0) {
    State<N> zero{};
    const double d0 = scaled_norm(y, y, zero);
    const double dd = scaled_norm(k1, y, zero);
    h = (d0 < 1e-5 || dd < 1e-5) ? 1e-6 : 0.01 * d0 / dd;
    h = std::min(h, span);
    h = std::max(h, 1e-12 * std::max(1.0, span));
  }
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

  State<N> k2, k3, k4, k5, k6, k7, tmp, y_new, err;
  double fac_prev = 1e-4;
  bool rejected = false;
  long steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > opt.max_steps) {
      std::ostringstream os;
      os << "ODE step budget exhausted at t = " << t;
      throw StiffnessError(os.str(), t);
    }
    const bool last = h >= std::abs(t1 - t);
    if (last) h = std::abs(t1 - t);
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "ODE step size underflow at t = " << t << " (h = " << h << ")";
      throw StiffnessError(os.str(), t);
    }
    const double hs = dir * h;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    k2 = rhs(t + c2 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = last ? t1 : t + hs;
    k6 = rhs(t + hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(t_new, y_new);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) finite = finite && std::isfinite(y_new[i]) && std::isfinite(err[i]);
    const double en = finite ? scaled_norm(err, y, y_new) : std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      typename Trajectory<N>::Segment seg;
      seg.t0 = t;
      seg.h = t_new - t;
      for (std::size_t i = 0; i < N; ++i) {
        seg.r1[i] = y[i];
        seg.r2[i] = y_new[i] - y[i];
        seg.r3[i] = seg.h * k1[i] - seg.r2[i];
        seg.r4[i] = seg.r2[i] - seg.h * k7[i] - seg.r3[i];
        seg.r5[i] = seg.h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                             d7 * k7[i]);
      }
      traj.append(seg, y_new, opt.dense);
      const double t_prev = t;
      const State<N> y_prev = y;
      t = t_new;
      y = y_new;
      k1 = k7;
      // Lund-stabilised step control.
      double fac = std::pow(std::max(en, 1e-10), 0.17) / std::pow(fac_prev, 0.04) / 0.9;
      fac = std::clamp(fac, 0.1, 5.0);
      double h_new = h / fac;
      if (rejected) h_new = std::min(h_new, h);
      fac_prev = std::max(en, 1e-4);
      rejected = false;
      h = h_new;
      if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
      if (!observer(t_prev, y_prev, t, y)) break;
    } else {
      const double fac = finite ? std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0) : 0.1;
      h *= fac;
      rejected = true;
    }
  }
  return traj;
}

}  // namespace vortwave::numerics

#endif  // VORTWAVE_NUMERICS_ODE_HPP
