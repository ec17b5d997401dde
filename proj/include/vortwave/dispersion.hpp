#ifndef VORTWAVE_DISPERSION_HPP
#define VORTWAVE_DISPERSION_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/errors.hpp"
#include "vortwave/numerics/bvp.hpp"
#include "vortwave/numerics/roots.hpp"
#include "vortwave/stream.hpp"

namespace vortwave {

namespace detail {

// tau^2 - omega'(u(y)) along the base stream.
struct LinearisedCoefficient {
  const StreamSolution* stream;
  double tau2;
  double operator()(double y) const {
    return tau2 - stream->flow().vorticity().omega_prime(stream->u_fast(y));
  }
};

inline void require_nonnegative_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    std::ostringstream os;
    os << "wavenumber tau = " << tau << " must be finite and non-negative";
    throw DomainError(os.str());
  }
}

}  // namespace detail

struct GammaSolution {
  numerics::LinearBvpSolution bvp;
  double tau = 0.0;
  /// gamma'(d, tau).
  double slope_right = 0.0;
  /// omega' was taken as the a.e. derivative of a piecewise-linear table.
  bool formal = false;
};

/// -gamma'' + (tau^2 - omega'(u)) gamma = 0, gamma(0) = 0, gamma(d) = 1.
inline GammaSolution gamma_bvp(const StreamSolution& stream, double tau) {
  detail::require_nonnegative_tau(tau);
  GammaSolution g;
  g.tau = tau;
  g.formal = !stream.flow().vorticity().is_smooth();
  g.bvp = numerics::shoot_linear_bvp(detail::LinearisedCoefficient{&stream, tau * tau}, [](double) { return 0.0; },
                                     stream.d(), 0.0, 1.0, stream.flow().options().ivp);
  g.slope_right = g.bvp.slope_right();
  return g;
}

namespace detail {

inline void require_assumption_one(const StreamSolution& stream) {
  if (std::abs(stream.surface_slope()) <= 1e-12) {
    std::ostringstream os;
    os << "u'(d) = " << stream.surface_slope() << " vanishes; the dispersion relation needs u'(d) != 0";
    throw AssumptionError(os.str());
  }
}

}  // namespace detail

/// gamma'(d, tau) alone. Integrates zeta = gamma / gamma', which obeys the
/// regular Riccati equation zeta' = 1 - c zeta^2, zeta(0) = 0; falls back to
/// the linear shot if gamma' vanishes on the way (zeta blows up).
inline double gamma_slope(const StreamSolution& stream, double tau) {
  detail::require_nonnegative_tau(tau);
  const detail::LinearisedCoefficient coeff{&stream, tau * tau};
  auto opt = stream.flow().options().ivp;
  opt.dense = false;
  const double d = stream.d();
  constexpr double kBlowUp = 1e6;

  bool escaped = false;
  auto riccati = [&coeff](double y, const numerics::State<1>& z) {
    return numerics::State<1>{1.0 - coeff(y) * z[0] * z[0]};
  };
  auto watch = [&escaped](double, const numerics::State<1>&, double, const numerics::State<1>& z) {
    escaped = !(std::abs(z[0]) < kBlowUp);
    return !escaped;
  };
  try {
    const auto zeta = numerics::solve_ivp<1>(riccati, numerics::State<1>{0.0}, 0.0, d, opt, watch);
    if (!escaped) {
      const double z = zeta.back()[0];
      if (!(std::abs(z) > 1e-10 * d)) {
        std::ostringstream os;
        os << "gamma problem is degenerate at tau = " << tau << ": gamma/gamma' at d is " << z;
        throw ResonanceError(os.str(), z);
      }
      return 1.0 / z;
    }
  } catch (const StiffnessError&) {
  }

  auto rhs = [&coeff](double y, const numerics::State<2>& v) { return numerics::State<2>{v[1], coeff(y) * v[0]}; };
  double scale = d;
  auto track = [&scale](double, const numerics::State<2>&, double, const numerics::State<2>& v) {
    scale = std::max(scale, std::abs(v[0]));
    return true;
  };
  const auto shot = numerics::solve_ivp<2>(rhs, numerics::State<2>{0.0, 1.0}, 0.0, d, opt, track);
  const auto& end = shot.back();
  if (!(std::abs(end[0]) > 1e-10 * scale)) {
    std::ostringstream os;
    os << "gamma problem is degenerate at tau = " << tau << ": homogeneous solution at d is " << end[0];
    throw ResonanceError(os.str(), end[0]);
  }
  return end[1] / end[0];
}

/// sigma(tau) = u'(d) gamma'(d, tau) - 1/u'(d) + omega(1).
inline double sigma(const StreamSolution& stream, double tau) {
  detail::require_assumption_one(stream);
  const double up = stream.surface_slope();
  return up * gamma_slope(stream, tau) - 1.0 / up + stream.flow().vorticity().omega(1.0);
}

struct DispersionSettings {
  double tau_max = 50.0;
  double step = 0.01;
  double tau_start = 1e-6;
  int K = 10;
  double multiple_margin = 1e-6;
  double root_tol = 1e-9;
};

struct DispersionResult {
  double s = 0.0;
  double d = 0.0;
  double surface_slope = 0.0;
  std::optional<double> tau0;
  double sigma_at_tau0 = 0.0;
  std::vector<double> taus;
  std::vector<double> sigmas;
  bool assumption_I = false;
  bool assumption_II = false;
  /// First k in 2..K with |sigma(k tau0)| <= margin, if any.
  std::optional<int> resonant_multiple;
  std::vector<double> multiple_sigmas;
  DispersionSettings settings;
  std::vector<std::string> warnings;
};

/// Scans sigma on (0, tau_max] for its first sign change, polishes the root
/// and checks the multiples k tau0, k = 2..K. A missing root is a result, not
/// an error.
inline DispersionResult find_tau0(const StreamSolution& stream, const DispersionSettings& set = {}) {
  if (!(set.tau_max > set.tau_start) || !(set.step > 0.0) || set.K < 1) {
    throw ValidationError("dispersion scan needs tau_max > start, step > 0 and K >= 1");
  }
  DispersionResult res;
  res.s = stream.s();
  res.d = stream.d();
  res.surface_slope = stream.surface_slope();
  res.settings = set;
  res.assumption_I = std::abs(stream.surface_slope()) > 1e-12;
  if (!res.assumption_I) {
    res.warnings.push_back("assumption I fails: u'(d) = 0, sigma is undefined");
    return res;
  }
  if (!stream.flow().vorticity().is_smooth()) {
    res.warnings.push_back("omega' of a piecewise-linear table is its a.e. derivative; results are formal");
  }
  auto f = [&stream](double tau) { return sigma(stream, tau); };

  res.taus.push_back(set.tau_start);
  for (long i = 1;; ++i) {
    const double tau = static_cast<double>(i) * set.step;
    if (tau > set.tau_max + 1e-12 * set.tau_max) break;
    if (tau > set.tau_start) res.taus.push_back(tau);
  }
  res.sigmas.reserve(res.taus.size());
  for (double tau : res.taus) res.sigmas.push_back(f(tau));

  for (std::size_t i = 0; i + 1 < res.taus.size(); ++i) {
    const double a = res.sigmas[i];
    const double b = res.sigmas[i + 1];
    // sigma(0+) = 0 is the critical degenerate root, not a positive one.
    if (i == 0 && std::abs(a) <= set.root_tol) continue;
    if (b == 0.0) {
      res.tau0 = res.taus[i + 1];
      break;
    }
    if (a * b < 0.0) {
      res.tau0 = numerics::find_root(f, numerics::Bracket{res.taus[i], res.taus[i + 1], a, b}, 1e-14, 1e-13);
      break;
    }
  }
  if (!res.tau0) {
    std::ostringstream os;
    os << "no sign change of sigma on (0, " << set.tau_max << "]";
    res.warnings.push_back(os.str());
    return res;
  }
  res.sigma_at_tau0 = f(*res.tau0);
  res.assumption_II = true;
  for (int k = 2; k <= set.K; ++k) {
    const double v = f(k * *res.tau0);
    res.multiple_sigmas.push_back(v);
    if (std::abs(v) <= set.multiple_margin && !res.resonant_multiple) {
      res.resonant_multiple = k;
      res.assumption_II = false;
    }
  }
  return res;
}

}  // namespace vortwave

#endif  // VORTWAVE_DISPERSION_HPP
