#ifndef VORTWAVE_LINEARWAVE_HPP
#define VORTWAVE_LINEARWAVE_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/dispersion.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/numerics/bvp.hpp"
#include "vortwave/stream.hpp"

namespace vortwave {

struct WSolution {
  numerics::LinearBvpSolution bvp;
  double tau = 0.0;
  double slope_left = 0.0;
  double slope_right = 0.0;
  /// d^-1 u'(d) - 1/u'(d); equals W'(d) only at a root of sigma.
  double closed_form_right = 0.0;
  double discrepancy = 0.0;
  bool consistent = false;
};

/// -W'' + (tau^2 - omega'(u)) W = d^-1 (y u' tau^2 + 2 omega(u)), W(0) = W(d) = 0.
inline WSolution solve_W(const StreamSolution& stream, double tau) {
  detail::require_nonnegative_tau(tau);
  detail::require_assumption_one(stream);
  const auto& dist = stream.flow().vorticity();
  const double d = stream.d();
  const double tau2 = tau * tau;
  auto rhs = [&stream, &dist, d, tau2](double y) {
    return (y * stream.du(y) * tau2 + 2.0 * dist.omega_extended(stream.u_fast(y))) / d;
  };
  WSolution w;
  w.tau = tau;
  w.bvp = numerics::shoot_linear_bvp(detail::LinearisedCoefficient{&stream, tau2}, rhs, d, 0.0, 0.0,
                                     stream.flow().options().ivp);
  w.slope_left = w.bvp.slope_left();
  w.slope_right = w.bvp.slope_right();
  const double up = stream.surface_slope();
  w.closed_form_right = up / d - 1.0 / up;
  w.discrepancy = std::abs(w.slope_right - w.closed_form_right);
  w.consistent = w.discrepancy <= 1e-5;
  return w;
}

struct AuxSolution {
  numerics::LinearBvpSolution bvp;
  double tau = 0.0;
  double slope_left = 0.0;
  double slope_right = 0.0;
};

/// -w'' + (tau^2 - omega'(u)) w = 0, w(0) = 1, w(d) = 0.
inline AuxSolution solve_w_aux(const StreamSolution& stream, double tau) {
  detail::require_nonnegative_tau(tau);
  AuxSolution a;
  a.tau = tau;
  a.bvp = numerics::shoot_linear_bvp(detail::LinearisedCoefficient{&stream, tau * tau}, [](double) { return 0.0; },
                                     stream.d(), 1.0, 0.0, stream.flow().options().ivp);
  a.slope_left = a.bvp.slope_left();
  a.slope_right = a.bvp.slope_right();
  return a;
}

struct WPrime0Check {
  bool skipped = false;
  std::string diagnostic;
  double tau = 0.0;
  /// W'(0) from the W solution.
  double numeric = 0.0;
  /// d u'(d) w'(d).
  double identity_value = 0.0;
  double discrepancy = 0.0;
  /// u'(0)/d + u'(d) w'(d): Green's identity for the W problem with the
  /// d^-1-normalised right-hand side.
  double green_value = 0.0;
  double green_discrepancy = 0.0;
};

/// Compares W'(0) with d u'(d) w'(d) and with u'(0)/d + u'(d) w'(d).
inline WPrime0Check check_Wprime0(const StreamSolution& stream, double tau0) {
  WPrime0Check c;
  c.tau = tau0;
  if (tau0 == 0.0) {
    c.skipped = true;
    c.diagnostic = "tau = 0: the W problem degenerates, identity check skipped";
    return c;
  }
  const auto W = solve_W(stream, tau0);
  const auto w = solve_w_aux(stream, tau0);
  const double d = stream.d();
  const double up = stream.surface_slope();
  c.numeric = W.slope_left;
  c.identity_value = d * up * w.slope_right;
  c.discrepancy = std::abs(c.numeric - c.identity_value);
  c.green_value = stream.s() / d + up * w.slope_right;
  c.green_discrepancy = std::abs(c.numeric - c.green_value);
  return c;
}

struct FieldValue {
  double psi;
  double psi_x;
  double psi_y;
};

/// psi = u(d y / eta) + t cos(tau0 x) W(d y / eta), eta = d + t cos(tau0 x).
/// Shared by the sampled field and by every consumer that needs psi off the
/// grid.
class WaveModel {
 public:
  WaveModel(StreamSolution base, WSolution W, double tau0, double t)
      : base_(std::move(base)), W_(std::move(W)), tau0_(tau0), t_(t) {}

  const StreamSolution& base() const { return base_; }
  const WSolution& W() const { return W_; }
  double tau0() const { return tau0_; }
  double t() const { return t_; }
  double d() const { return base_.d(); }
  double wavelength() const { return 2.0 * std::numbers::pi / tau0_; }

  double eta(double x) const { return base_.d() + t_ * std::cos(tau0_ * x); }
  double eta_x(double x) const { return -t_ * tau0_ * std::sin(tau0_ * x); }

  FieldValue evaluate(double x, double y) const {
    const double d = base_.d();
    const double c = std::cos(tau0_ * x);
    const double e = d + t_ * c;
    const double yh = std::clamp(d * y / e, 0.0, d);
    const double u = base_.u_fast(yh);
    const double up = base_.du(yh);
    const double w = W_.bvp.value(yh);
    const double wp = W_.bvp.slope(yh);
    const double along = up + t_ * c * wp;
    FieldValue v;
    v.psi = u + t_ * c * w;
    v.psi_y = along * d / e;
    v.psi_x = along * (-d * y * eta_x(x) / (e * e)) - t_ * tau0_ * std::sin(tau0_ * x) * w;
    return v;
  }

 private:
  StreamSolution base_;
  WSolution W_;
  double tau0_;
  double t_;
};

/// Sampled small-amplitude wave over one wavelength. Column i sits at x_i;
/// row j at y = eta_i j / (ny - 1), i.e. at the rescaled ordinate
/// yhat_j = d j / (ny - 1) of the base stream.
class WaveField {
 public:
  std::size_t nx() const { return x_.size(); }
  std::size_t ny() const { return yhat_.size(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& eta() const { return eta_; }
  const std::vector<double>& yhat() const { return yhat_; }
  double y(std::size_t i, std::size_t j) const {
    return eta_[i] * static_cast<double>(j) / static_cast<double>(ny() - 1);
  }
  double psi(std::size_t i, std::size_t j) const { return psi_[i * ny() + j]; }
  const std::vector<double>& psi_values() const { return psi_; }

  double r() const { return r_; }
  double s() const { return model_->base().s(); }
  double d() const { return model_->d(); }
  double t() const { return model_->t(); }
  double tau0() const { return model_->tau0(); }
  double lambda() const { return 0.0; }
  double wavelength() const { return model_->wavelength(); }
  const WaveModel& model() const { return *model_; }
  std::shared_ptr<const WaveModel> model_ptr() const { return model_; }

 private:
  friend WaveField build_wave(const StreamSolution&, const DispersionResult&, double, std::size_t, std::size_t);
  std::vector<double> x_;
  std::vector<double> eta_;
  std::vector<double> yhat_;
  std::vector<double> psi_;
  double r_ = 0.0;
  std::shared_ptr<const WaveModel> model_;
};

/// First-order Stokes wave on the base stream with lambda = 0, sampled on an
/// nx x ny grid over one wavelength 2 pi / tau0.
inline WaveField build_wave(const StreamSolution& stream, const DispersionResult& disp, double t,
                            std::size_t nx = 129, std::size_t ny = 129) {
  if (!disp.assumption_II || !disp.tau0) {
    throw AssumptionError("wave construction needs assumption II (a positive dispersion root, no resonant multiple)");
  }
  if (disp.s != stream.s() || disp.d != stream.d()) {
    throw ValidationError("dispersion result belongs to a different base stream");
  }
  if (!std::isfinite(t) || std::abs(t) > 0.05 * stream.d()) {
    std::ostringstream os;
    os << "amplitude |t| = " << std::abs(t) << " exceeds 0.05 d = " << 0.05 * stream.d();
    throw ValidationError(os.str());
  }
  if (nx < 5 || ny < 7) throw ValidationError("wave grid needs at least 5 columns and 7 rows");
  const double tau0 = *disp.tau0;
  auto model = std::make_shared<const WaveModel>(stream, solve_W(stream, tau0), tau0, t);

  WaveField f;
  f.r_ = stream.r();
  f.model_ = model;
  const double d = stream.d();
  const double L = model->wavelength();
  f.yhat_.resize(ny);
  std::vector<double> u(ny);
  std::vector<double> W(ny);
  for (std::size_t j = 0; j < ny; ++j) {
    f.yhat_[j] = (j + 1 == ny) ? d : d * static_cast<double>(j) / static_cast<double>(ny - 1);
    u[j] = stream.u(f.yhat_[j]);
    W[j] = (j == 0 || j + 1 == ny) ? 0.0 : model->W().bvp.value(f.yhat_[j]);
  }
  f.x_.resize(nx);
  f.eta_.resize(nx);
  f.psi_.resize(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = (i + 1 == nx) ? L : L * static_cast<double>(i) / static_cast<double>(nx - 1);
    const double c = (i + 1 == nx) ? 1.0 : std::cos(tau0 * x);
    f.x_[i] = x;
    f.eta_[i] = d + t * c;
    for (std::size_t j = 0; j < ny; ++j) f.psi_[i * ny + j] = u[j] + t * c * W[j];
  }
  return f;
}

namespace detail {

// Sixth-order one-sided derivative at the last of seven equally spaced samples.
inline double backward_derivative6(const double* v, double h) {
  // v[0] is the end point, v[k] = value k steps inward.
  return (147.0 * v[0] - 360.0 * v[1] + 450.0 * v[2] - 400.0 * v[3] + 225.0 * v[4] - 72.0 * v[5] +
          10.0 * v[6]) /
         (60.0 * h);
}

// Fourth-order centred derivative of periodic samples (last sample repeats
// the first).
inline std::vector<double> periodic_derivative4(const std::vector<double>& v, double h) {
  const std::size_t n = v.size() - 1;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = v[(i + n - 2) % n];
    const double m1 = v[(i + n - 1) % n];
    const double p1 = v[(i + 1) % n];
    const double p2 = v[(i + 2) % n];
    out[i] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  }
  out[n] = out[0];
  return out;
}

}  // namespace detail

struct SurfaceResidual {
  std::vector<double> x;
  std::vector<double> values;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double x_at_max = 0.0;
  std::string stencil;
};

/// psi_x^2 + psi_y^2 + 2 eta - 3 r on y = eta, by finite differences on the
/// field's own grid (one-sided 6th order across rows, periodic 4th order
/// along the surface).
inline SurfaceResidual surface_bernoulli_residual(const WaveField& f) {
  const std::size_t nx = f.nx();
  const std::size_t ny = f.ny();
  const double hy = f.yhat()[1] - f.yhat()[0];
  const double hx = f.x()[1] - f.x()[0];
  std::vector<double> top(nx);
  for (std::size_t i = 0; i < nx; ++i) top[i] = f.psi(i, ny - 1);
  const auto top_x = detail::periodic_derivative4(top, hx);
  const auto eta_x = detail::periodic_derivative4(f.eta(), hx);
  SurfaceResidual res;
  res.stencil = "rows: one-sided 6th order; columns: periodic centred 4th order";
  res.x = f.x();
  res.values.resize(nx);
  const double d = f.d();
  for (std::size_t i = 0; i < nx; ++i) {
    double col[7];
    for (std::size_t k = 0; k < 7; ++k) col[k] = f.psi(i, ny - 1 - k);
    const double psi_yhat = detail::backward_derivative6(col, hy);
    const double eta = f.eta()[i];
    const double psi_y = psi_yhat * d / eta;
    const double psi_x = top_x[i] - psi_yhat * d * eta_x[i] / eta;
    const double r = psi_x * psi_x + psi_y * psi_y + 2.0 * eta - 3.0 * f.r();
    res.values[i] = r;
    res.mean_abs += std::abs(r);
    if (std::abs(r) > res.max_abs) {
      res.max_abs = std::abs(r);
      res.x_at_max = f.x()[i];
    }
  }
  res.mean_abs /= static_cast<double>(nx);
  return res;
}

struct SignChangeReport {
  bool flag = false;
  double min_value = 0.0;
  double x = 0.0;
  double y = 0.0;
  double threshold = 0.0;
};

/// Tolerance to which sampled u and psi are constructed.
inline constexpr double kConstructionTolerance = 1e-10;

inline SignChangeReport detect_sign_change(const StreamSolution& stream) {
  const auto low = detail::trajectory_minimum(stream.trajectory(), stream.d());
  SignChangeReport r;
  r.threshold = -10.0 * kConstructionTolerance;
  r.min_value = low.value;
  r.y = low.y;
  r.flag = r.min_value < r.threshold;
  return r;
}

inline SignChangeReport detect_sign_change(const ShotStream& shot) {
  SignChangeReport r;
  r.threshold = -10.0 * kConstructionTolerance;
  r.min_value = shot.min_u();
  r.y = shot.y_at_min();
  r.flag = r.min_value < r.threshold;
  return r;
}

inline SignChangeReport detect_sign_change(const WaveField& f) {
  SignChangeReport r;
  r.threshold = -10.0 * kConstructionTolerance;
  r.min_value = f.psi(0, 0);
  for (std::size_t i = 0; i < f.nx(); ++i) {
    for (std::size_t j = 0; j < f.ny(); ++j) {
      if (f.psi(i, j) < r.min_value) {
        r.min_value = f.psi(i, j);
        r.x = f.x()[i];
        r.y = f.y(i, j);
      }
    }
  }
  r.flag = r.min_value < r.threshold;
  return r;
}

}  // namespace vortwave

#endif  // VORTWAVE_LINEARWAVE_HPP
