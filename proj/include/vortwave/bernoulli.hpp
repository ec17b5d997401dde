#ifndef VORTWAVE_BERNOULLI_HPP
#define VORTWAVE_BERNOULLI_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/errors.hpp"
#include "vortwave/numerics/roots.hpp"
#include "vortwave/stream.hpp"
#include "vortwave/vorticity.hpp"

namespace vortwave {

/// R(s) = (s^2 - 2 Omega(1) + 2 d(s)) / 3.
inline double head(const Flow& flow, double s) {
  const double d = depth(flow, s);
  return (s * s - 2.0 * flow.classification().Omega_at_1 + 2.0 * d) / 3.0;
}

/// R'(s) = (2 s / 3)(1 - Phi(1; s)), s > s0.
inline double head_derivative(const Flow& flow, double s) {
  return 2.0 * s / 3.0 * (1.0 - phi(flow, s, 1.0));
}

struct HeadProbe {
  double s;
  double head;
  double phi;
};

struct CriticalPoint {
  double s_c = 0.0;
  double r_c = 0.0;
  double d_c = 0.0;
  /// Phi(1; s_c) - 1.
  double stationarity_gap = 0.0;
  /// Argmin returned by the minimiser before polishing on Phi(1; s) = 1.
  double s_minimiser = 0.0;
  std::vector<HeadProbe> probes;
};

namespace detail {

inline std::string probe_table(const std::vector<HeadProbe>& probes) {
  std::ostringstream os;
  os.precision(10);
  for (const auto& p : probes) os << "\n  s = " << p.s << "  R = " << p.head << "  Phi(1) = " << p.phi;
  return os.str();
}

// Smallest admissible s strictly above s0 for Phi and the minimisation.
inline double lower_limit(const Flow& flow) {
  const double s0 = flow.s0();
  const double guard = flow.options().guard_band;
  return s0 + std::max(guard, 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s0));
}

}  // namespace detail

/// Locates the unique minimum of R on (s0, inf): bracket expansion on the
/// sign of 1 - Phi(1; s), Brent minimisation, then a root polish of
/// Phi(1; s) = 1.
inline CriticalPoint find_critical(const Flow& flow) {
  // Keeps the minimum well inside the bracket handed to the minimiser.
  constexpr double kBracketMargin = 1e-3;
  const double s0 = flow.s0();
  const double floor = detail::lower_limit(flow);
  CriticalPoint cp;
  auto probe = [&](double s) {
    const double ph = phi(flow, s, 1.0);
    cp.probes.push_back({s, head(flow, s), ph});
    return ph;
  };

  double gap = std::max(1.0, s0);
  double s_hi = s0 + gap;
  int expansions = 0;
  while (probe(s_hi) >= 1.0 - kBracketMargin) {
    if (++expansions > 60) {
      throw BracketError("no upper bracket for the minimum of R:" + detail::probe_table(cp.probes));
    }
    gap *= 2.0;
    s_hi = s0 + gap;
  }
  double s_lo = s0 + 0.5 * (s_hi - s0);
  while (probe(s_lo) <= 1.0 + kBracketMargin) {
    if (s_lo <= floor) {
      throw BracketError("no lower bracket for the minimum of R above s0:" + detail::probe_table(cp.probes));
    }
    s_lo = std::max(floor, s0 + 0.25 * (s_lo - s0));
  }

  const auto min = numerics::minimize_unimodal([&flow](double s) { return head(flow, s); }, s_lo, s_hi, 1e-10);
  cp.s_minimiser = min.argmin;
  cp.s_c = numerics::find_root([&flow](double s) { return 1.0 - phi(flow, s, 1.0); }, s_lo, s_hi,
                               flow.options().root_tol);
  cp.d_c = depth(flow, cp.s_c);
  cp.r_c = (cp.s_c * cp.s_c - 2.0 * flow.classification().Omega_at_1 + 2.0 * cp.d_c) / 3.0;
  cp.stationarity_gap = phi(flow, cp.s_c, 1.0) - 1.0;
  return cp;
}

struct SecondCritical {
  bool d0_finite = false;
  double d0 = std::numeric_limits<double>::infinity();
  std::optional<double> r0;
};

/// d0 = d(s0) and r0 = R(s0) under (ii)/(iii); d0 = +inf and no r0 under (i).
inline SecondCritical second_critical(const Flow& flow) {
  SecondCritical sc;
  if (flow.condition() == Condition::I) return sc;
  sc.d0_finite = true;
  sc.d0 = depth(flow, flow.s0());
  sc.r0 = (flow.s0() * flow.s0() - 2.0 * flow.classification().Omega_at_1 + 2.0 * sc.d0) / 3.0;
  return sc;
}

struct BernoulliAnalysis {
  FlowClassification classification;
  double s0 = 0.0;
  double s_c = 0.0;
  double r_c = 0.0;
  double d_c = 0.0;
  bool d0_finite = false;
  double d0 = std::numeric_limits<double>::infinity();
  std::optional<double> r0;
  double stationarity_gap = 0.0;
  double s_minimiser = 0.0;
};

inline BernoulliAnalysis analyze(const Flow& flow) {
  const auto cp = find_critical(flow);
  const auto sc = second_critical(flow);
  BernoulliAnalysis a;
  a.classification = flow.classification();
  a.s0 = flow.s0();
  a.s_c = cp.s_c;
  a.r_c = cp.r_c;
  a.d_c = cp.d_c;
  a.d0_finite = sc.d0_finite;
  a.d0 = sc.d0;
  a.r0 = sc.r0;
  a.stationarity_gap = cp.stationarity_gap;
  a.s_minimiser = cp.s_minimiser;
  return a;
}

enum class Regime { SubcriticalPair, OnlySupercritical, Critical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::SubcriticalPair: return "subcritical-pair";
    case Regime::OnlySupercritical: return "only-supercritical";
    case Regime::Critical: return "critical";
  }
  return "?";
}

struct ConjugatePair {
  double r = 0.0;
  std::optional<double> s_plus;
  std::optional<double> d_plus;
  double s_minus = 0.0;
  double d_minus = 0.0;
  Regime regime = Regime::SubcriticalPair;
};

/// Solves R(s) = r. Below r_c there is no stream solution; within 1e-10 of
/// r_c the pair is reported as critical.
inline ConjugatePair conjugates(const Flow& flow, const BernoulliAnalysis& a, double r) {
  if (!std::isfinite(r)) throw ValidationError("Bernoulli constant r is not finite");
  constexpr double kCriticalBand = 1e-10;
  ConjugatePair cp;
  cp.r = r;
  if (r < a.r_c - kCriticalBand) {
    std::ostringstream os;
    os.precision(12);
    os << "no stream solution for r = " << r << ": the Bernoulli constant must be at least r_c = " << a.r_c;
    throw NoSolutionError(os.str(), a.r_c);
  }
  if (std::abs(r - a.r_c) < kCriticalBand) {
    cp.regime = Regime::Critical;
    cp.s_plus = a.s_c;
    cp.d_plus = a.d_c;
    cp.s_minus = a.s_c;
    cp.d_minus = a.d_c;
    return cp;
  }
  auto excess = [&flow, r](double s) { return head(flow, s) - r; };
  const double tol = flow.options().root_tol;

  double gap = std::max(1.0, a.s_c);
  double s_hi = a.s_c + gap;
  for (int i = 0; excess(s_hi) <= 0.0; ++i) {
    if (i > 60) throw BracketError("no upper bracket for the supercritical root");
    gap *= 2.0;
    s_hi = a.s_c + gap;
  }
  cp.s_minus = numerics::find_root(excess, a.s_c, s_hi, tol);
  cp.d_minus = depth(flow, cp.s_minus);

  if (a.r0 && r >= *a.r0) {
    cp.regime = Regime::OnlySupercritical;
    return cp;
  }
  double s_lo;
  if (a.d0_finite) {
    s_lo = a.s0;
  } else {
    const double floor = detail::lower_limit(flow);
    s_lo = a.s0 + 0.5 * (a.s_c - a.s0);
    while (excess(s_lo) <= 0.0) {
      if (s_lo <= floor) {
        std::ostringstream os;
        os.precision(12);
        os << "subcritical root for r = " << r << " lies within the guard band above s0 = " << a.s0;
        throw BracketError(os.str());
      }
      s_lo = std::max(floor, a.s0 + 0.25 * (s_lo - a.s0));
    }
  }
  cp.s_plus = numerics::find_root(excess, s_lo, a.s_c, tol);
  cp.d_plus = depth(flow, *cp.s_plus);
  cp.regime = Regime::SubcriticalPair;
  return cp;
}

inline ConjugatePair conjugates(const Flow& flow, double r) { return conjugates(flow, analyze(flow), r); }

}  // namespace vortwave

#endif  // VORTWAVE_BERNOULLI_HPP
