#ifndef VORTWAVE_STREAM_HPP
#define VORTWAVE_STREAM_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "vortwave/errors.hpp"
#include "vortwave/numerics/ode.hpp"
#include "vortwave/numerics/quadrature.hpp"
#include "vortwave/numerics/roots.hpp"
#include "vortwave/vorticity.hpp"

namespace vortwave {

namespace detail {

// s^2 - 2 Omega(tau), split so that the vanishing end-point keeps full
// relative accuracy: near tau = 1 it is (s^2 - 2 Omega(1)) + 2 tail(1 - tau).
class Radicand {
 public:
  Radicand(const Flow& flow, double s) : flow_(flow), s_(s) {
    top_ = s * s - 2.0 * flow.classification().Omega_at_1;
    if (top_ < 0.0) top_ = 0.0;
  }
  double at(double tau) const { return s_ * s_ - 2.0 * flow_.vorticity().Omega(tau); }
  double from_top(double delta) const { return top_ + 2.0 * flow_.vorticity().Omega_tail(delta); }
  double top() const { return top_; }

 private:
  const Flow& flow_;
  double s_;
  double top_;
};

inline void require_admissible(const Flow& flow, double s, bool strict) {
  const double s0 = flow.s0();
  if (!std::isfinite(s)) throw DomainError("slope s is not finite");
  if (s < s0 && s0 - s > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s0)) {
    std::ostringstream os;
    os.precision(17);
    os << "s = " << s << " is below the unidirectional threshold s0 = " << s0;
    throw DomainError(os.str());
  }
  if (flow.condition() == Condition::I && s < s0 + flow.options().guard_band) {
    std::ostringstream os;
    os.precision(17);
    os << "depth integral diverges at s = " << s << ": conditions (i) give d0 = +inf (s0 = " << s0
       << ", guard band " << flow.options().guard_band << ")";
    throw DivergenceError(os.str());
  }
  if (strict && s <= s0) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not integrable at s = s0 = " << s0 << "; need s > s0";
    throw DomainError(os.str());
  }
}

/// int_a^b (s^2 - 2 Omega(tau))^(-exponent) dtau for 0 <= a <= b <= 1.
inline double radicand_integral(const Flow& flow, double s, double a, double b, double exponent) {
  if (b <= a) return 0.0;
  const Radicand rad(flow, s);
  const auto& spec = flow.options().quadrature;
  auto power = [exponent](double x) {
    if (!(x > 0.0)) {
      throw DomainError("radicand s^2 - 2 Omega vanished inside the integration interval");
    }
    return exponent == 0.5 ? 1.0 / std::sqrt(x) : std::pow(x, -exponent);
  };
  auto left_form = [&](double tau) { return power(rad.at(tau)); };
  auto right_form = [&](double delta) { return power(rad.from_top(delta)); };

  std::vector<double> cuts{a};
  for (double m : flow.classification().maximizers) {
    if (m > a && m < b) cuts.push_back(m);
  }
  if (a < 0.5 && b > 0.5) cuts.push_back(0.5);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi <= lo) continue;
    if (hi <= 0.5) {
      auto piece = spec.regular();
      if (lo == 0.0) piece = piece.with_left_singular();
      total += numerics::integrate(left_form, lo, hi, piece);
    } else {
      auto piece = spec.regular();
      if (hi == 1.0) piece = piece.with_left_singular();
      total += numerics::integrate(right_form, 1.0 - hi, 1.0 - lo, piece);
    }
  }
  return total;
}

inline double radicand_value(const Flow& flow, double s, double p) {
  const Radicand rad(flow, s);
  return p <= 0.5 ? rad.at(p) : rad.from_top(1.0 - p);
}

inline void check_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << p << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

}  // namespace detail

/// d(s) = int_0^1 (s^2 - 2 Omega)^(-1/2). Finite at s = s0 under (ii)/(iii).
inline double depth(const Flow& flow, double s) {
  detail::require_admissible(flow, s, false);
  return detail::radicand_integral(flow, s, 0.0, 1.0, 0.5);
}

/// H(p; s) = int_0^p (s^2 - 2 Omega)^(-1/2).
inline double profile(const Flow& flow, double s, double p) {
  detail::check_unit(p, "p");
  detail::require_admissible(flow, s, false);
  return detail::radicand_integral(flow, s, 0.0, p, 0.5);
}

/// H_p(p; s) = (s^2 - 2 Omega(p))^(-1/2).
inline double profile_slope(const Flow& flow, double s, double p) {
  detail::check_unit(p, "p");
  return 1.0 / std::sqrt(detail::radicand_value(flow, s, p));
}

/// Phi(p; s) = int_0^p H_t^3 = int_0^p (s^2 - 2 Omega)^(-3/2); needs s > s0.
inline double phi(const Flow& flow, double s, double p) {
  detail::check_unit(p, "p");
  detail::require_admissible(flow, s, true);
  return detail::radicand_integral(flow, s, 0.0, p, 1.5);
}

/// Integrates u'' = -omega(u), u(0) = 0, u'(0) = s over [0, length].
inline numerics::Trajectory<2> integrate_stream_equation(const Flow& flow, double s, double length) {
  const auto& dist = flow.vorticity();
  auto rhs = [&dist](double, const numerics::State<2>& v) {
    return numerics::State<2>{v[1], -dist.omega_extended(v[0])};
  };
  return numerics::solve_ivp<2>(rhs, numerics::State<2>{0.0, s}, 0.0, length, flow.options().ivp);
}

class ShotStream;

/// A stream (shear-flow) solution: u'' + omega(u) = 0, u(0) = 0, u(d) = 1.
///
/// Built either from the quadrature representation (unidirectional, s >= s0),
/// in which case the profile H is sampled at 257 Chebyshev-Lobatto nodes, or
/// from a shot that may carry counter-currents (no profile).
class StreamSolution {
 public:
  static constexpr std::size_t kProfileNodes = 257;

  static StreamSolution make(const Flow& flow, double s) {
    StreamSolution st(flow);
    st.s_ = s;
    st.d_ = depth(flow, s);
    st.surface_slope_ = std::sqrt(detail::Radicand(flow, s).top());
    st.r_ = (st.surface_slope_ * st.surface_slope_ + 2.0 * st.d_) / 3.0;
    st.nodes_.resize(kProfileNodes);
    st.values_.resize(kProfileNodes);
    const double n = static_cast<double>(kProfileNodes - 1);
    for (std::size_t j = 0; j < kProfileNodes; ++j) {
      st.nodes_[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / n));
    }
    st.nodes_.front() = 0.0;
    st.nodes_.back() = 1.0;
    st.values_[0] = 0.0;
    for (std::size_t j = 1; j < kProfileNodes; ++j) {
      st.values_[j] =
          st.values_[j - 1] + detail::radicand_integral(flow, s, st.nodes_[j - 1], st.nodes_[j], 0.5);
    }
    st.values_.back() = st.d_;
    st.has_profile_ = true;
    st.trajectory_ = integrate_stream_equation(flow, s, st.d_);
    return st;
  }

  inline static StreamSolution from_shot(const ShotStream& shot);

  const Flow& flow() const { return flow_; }
  double s() const { return s_; }
  double d() const { return d_; }
  double r() const { return r_; }
  /// u'(d); equals sqrt(s^2 - 2 Omega(1)) for profile-based streams.
  double surface_slope() const { return surface_slope_; }
  bool has_profile() const { return has_profile_; }
  const std::vector<double>& profile_nodes() const { return nodes_; }
  const std::vector<double>& profile_values() const { return values_; }
  const numerics::Trajectory<2>& trajectory() const { return trajectory_; }

  /// Barycentric interpolant of the sampled profile.
  double H(double p) const {
    require_profile();
    detail::check_unit(p, "p");
    const std::size_t n = nodes_.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = p - nodes_[j];
      if (diff == 0.0) return values_[j];
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j + 1 == n) w *= 0.5;
      const double term = w / diff;
      num += term * values_[j];
      den += term;
    }
    return num / den;
  }

  /// H(p) by direct quadrature.
  double H_exact(double p) const {
    require_profile();
    return profile(flow_, s_, p);
  }

  /// u(y). Profile-based streams invert H to 1e-12; shot-based streams use
  /// the dense trajectory.
  double u(double y) const {
    check_depth(y);
    if (y == 0.0) return 0.0;
    if (y == d_) return 1.0;
    if (!has_profile_) return trajectory_(y)[0];
    const double guess = std::clamp(trajectory_(y)[0], 0.0, 1.0);
    double p = guess;
    for (int it = 0; it < 4; ++it) {
      const double residual = H_exact(p) - y;
      if (std::abs(residual) <= 1e-13 * std::max(1.0, d_)) return p;
      const double step = residual / profile_slope(flow_, s_, p);
      const double next = p - step;
      if (!(next > 0.0 && next < 1.0)) break;
      p = next;
    }
    auto f = [this, y](double q) { return H_exact(q) - y; };
    double lo = std::max(0.0, p - 1e-6);
    double hi = std::min(1.0, p + 1e-6);
    if (f(lo) > 0.0) lo = 0.0;
    if (f(hi) < 0.0) hi = 1.0;
    return numerics::find_root(f, lo, hi, 1e-15, 1e-13 * std::max(1.0, d_));
  }

  /// u(y) from the dense trajectory only.
  double u_fast(double y) const { return trajectory_(std::clamp(y, 0.0, d_))[0]; }
  /// u'(y) from the dense trajectory.
  double du(double y) const { return trajectory_(std::clamp(y, 0.0, d_))[1]; }

 private:
  explicit StreamSolution(const Flow& flow) : flow_(flow) {}

  void require_profile() const {
    if (!has_profile_) throw ValidationError("stream built from a shot has no profile H(p)");
  }
  void check_depth(double y) const {
    if (!(y >= 0.0 && y <= d_)) {
      std::ostringstream os;
      os.precision(17);
      os << "ordinate y = " << y << " outside [0, d] = [0, " << d_ << "]";
      throw DomainError(os.str());
    }
  }

  Flow flow_;
  double s_ = 0.0;
  double d_ = 0.0;
  double r_ = 0.0;
  double surface_slope_ = 0.0;
  bool has_profile_ = false;
  std::vector<double> nodes_;
  std::vector<double> values_;
  numerics::Trajectory<2> trajectory_;
};

inline StreamSolution make_stream(const Flow& flow, double s) { return StreamSolution::make(flow, s); }

/// p with H(p) = y, i.e. u(y).
inline double invert_profile(const StreamSolution& stream, double y) { return stream.u(y); }

namespace detail {

struct TrajectoryMinimum {
  double value = 0.0;
  double y = 0.0;
};

// Minimum of u over [0, end] for a (u, u') trajectory; interior minima are
// located where u' changes sign from - to +.
inline TrajectoryMinimum trajectory_minimum(const numerics::Trajectory<2>& traj, double end) {
  TrajectoryMinimum best{traj(0.0)[0], 0.0};
  auto consider = [&best](double u, double y) {
    if (u < best.value) best = {u, y};
  };
  for (const auto& seg : traj.segments()) {
    const double a = seg.t0;
    const double b = std::min(seg.t0 + seg.h, end);
    if (b <= a) continue;
    const double da = traj(a)[1];
    const double db = traj(b)[1];
    if (da < 0.0 && db > 0.0) {
      const double y = numerics::find_root([&traj](double x) { return traj(x)[1]; }, a, b, 1e-15);
      consider(traj(y)[0], y);
    }
    consider(traj(b)[0], b);
  }
  return best;
}

// u' > 0 at every step node and no sign change of u' inside a step.
inline bool slope_positive(const numerics::Trajectory<2>& traj, double end) {
  for (const auto& seg : traj.segments()) {
    const double a = seg.t0;
    const double b = std::min(seg.t0 + seg.h, end);
    if (!(traj(a)[1] > 0.0) || !(traj(b)[1] > 0.0)) return false;
    for (double theta : {0.25, 0.5, 0.75}) {
      if (!(traj(a + theta * (b - a))[1] > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Result of shooting u'' = -omega(u), u(0) = 0, u'(0) = s up to the first
/// upward crossing of u = 1.
class ShotStream {
 public:
  const Flow& flow() const { return flow_; }
  double s() const { return s_; }
  double d() const { return d_; }
  double r() const { return r_; }
  double surface_slope() const { return surface_slope_; }
  double min_u() const { return min_u_; }
  double y_at_min() const { return y_at_min_; }
  bool sign_change() const { return min_u_ < 0.0; }
  bool unidirectional() const { return unidirectional_; }
  /// Crossings of u = 1 after d up to max_depth (diagnostic only).
  int later_crossings() const { return later_crossings_; }
  bool continuation_complete() const { return continuation_complete_; }
  const numerics::Trajectory<2>& trajectory() const { return trajectory_; }

  double u(double y) const { return trajectory_(std::clamp(y, 0.0, d_))[0]; }
  double du(double y) const { return trajectory_(std::clamp(y, 0.0, d_))[1]; }

  std::vector<double> sample_y(std::size_t n = 257) const {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = d_ * static_cast<double>(i) / static_cast<double>(n - 1);
    return y;
  }

 private:
  friend ShotStream shoot_stream(const Flow& flow, double s, double max_depth);
  explicit ShotStream(const Flow& flow) : flow_(flow) {}

  Flow flow_;
  double s_ = 0.0;
  double d_ = 0.0;
  double r_ = 0.0;
  double surface_slope_ = 0.0;
  double min_u_ = 0.0;
  double y_at_min_ = 0.0;
  bool unidirectional_ = true;
  int later_crossings_ = 0;
  bool continuation_complete_ = true;
  numerics::Trajectory<2> trajectory_;
};

/// Shoots from the bottom with slope s. d is the first upward crossing of
/// u = 1 (event located on the dense output and polished by Brent). Later
/// crossings up to max_depth are only counted.
inline ShotStream shoot_stream(const Flow& flow, double s, double max_depth) {
  if (!(max_depth > 0.0) || !std::isfinite(max_depth)) throw ValidationError("max_depth must be positive");
  if (!std::isfinite(s)) throw DomainError("slope s is not finite");
  const auto& dist = flow.vorticity();
  auto rhs = [&dist](double, const numerics::State<2>& v) {
    return numerics::State<2>{v[1], -dist.omega_extended(v[0])};
  };
  const auto& opt = flow.options().ivp;

  // Stops at an upward crossing of u = 1, or at a local maximum of u inside a
  // step: large steps on near-polynomial profiles can jump over a whole
  // excursion above 1.
  double cross_lo = 0.0;
  double cross_hi = 0.0;
  bool crossed = false;
  bool peaked = false;
  auto watch = [&](double t0, const numerics::State<2>& y0, double t1, const numerics::State<2>& y1) {
    cross_lo = t0;
    cross_hi = t1;
    if (y0[0] < 1.0 && y1[0] >= 1.0) {
      crossed = true;
      return false;
    }
    if (y0[1] > 0.0 && y1[1] < 0.0) {
      peaked = true;
      return false;
    }
    return std::abs(y1[0]) < 1e12;
  };
  double t_start = 0.0;
  numerics::State<2> state{0.0, s};
  numerics::Trajectory<2> probe;
  while (true) {
    peaked = false;
    probe = numerics::solve_ivp<2>(rhs, state, t_start, max_depth, opt, watch);
    if (crossed) break;
    if (peaked) {
      const double t_peak =
          numerics::find_root([&probe](double y) { return probe(y)[1]; }, cross_lo, cross_hi, 1e-15);
      if (probe(t_peak)[0] >= 1.0) {
        cross_hi = t_peak;
        crossed = true;
        break;
      }
      t_start = cross_hi;
      state = probe(cross_hi);
      continue;
    }
    const auto& end = probe.back();
    std::ostringstream os;
    os.precision(17);
    os << "u never reaches 1 before max_depth = " << max_depth << "; final state y = " << probe.t_end()
       << ", u = " << end[0] << ", u' = " << end[1];
    throw NoCrossingError(os.str(), probe.t_end(), end[0], end[1]);
  }
  const double d = numerics::find_root([&probe](double y) { return probe(y)[0] - 1.0; }, cross_lo, cross_hi,
                                       1e-15);

  ShotStream shot(flow);
  shot.s_ = s;
  shot.d_ = d;
  shot.trajectory_ = numerics::solve_ivp<2>(rhs, numerics::State<2>{0.0, s}, 0.0, d, opt);
  const auto& top = shot.trajectory_.back();
  shot.surface_slope_ = top[1];
  shot.r_ = (top[1] * top[1] + 2.0 * d) / 3.0;

  const auto low = detail::trajectory_minimum(shot.trajectory_, d);
  const double min_u = low.value;
  const double y_min = low.y;
  const bool unidirectional = s > 0.0 && top[1] > 0.0 && detail::slope_positive(shot.trajectory_, d);
  shot.min_u_ = min_u;
  shot.y_at_min_ = y_min;
  shot.unidirectional_ = unidirectional;

  if (max_depth > d) {
    int crossings = 0;
    auto count = [&crossings, d](double t0, const numerics::State<2>& y0, double, const numerics::State<2>& y1) {
      if (t0 > d && (y0[0] - 1.0) * (y1[0] - 1.0) < 0.0) ++crossings;
      return std::abs(y1[0]) < 1e6;
    };
    try {
      const auto rest = numerics::solve_ivp<2>(rhs, top, d, max_depth, opt, count);
      shot.continuation_complete_ = rest.t_end() >= max_depth;
    } catch (const NumericalError&) {
      shot.continuation_complete_ = false;
    }
    shot.later_crossings_ = crossings;
  }
  return shot;
}

inline StreamSolution StreamSolution::from_shot(const ShotStream& shot) {
  StreamSolution st(shot.flow());
  st.s_ = shot.s();
  st.d_ = shot.d();
  st.r_ = shot.r();
  st.surface_slope_ = shot.surface_slope();
  st.has_profile_ = false;
  st.trajectory_ = shot.trajectory();
  return st;
}

}  // namespace vortwave

#endif  // VORTWAVE_STREAM_HPP
