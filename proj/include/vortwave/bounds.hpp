#ifndef VORTWAVE_BOUNDS_HPP
#define VORTWAVE_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/bernoulli.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/vorticity.hpp"

namespace vortwave {

enum class Verdict { Holds, Violated, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

/// One checked statement. For chains upper >= reference > lower, lhs is the
/// upper value, rhs the reference and lower the right-most value.
struct VerdictRecord {
  Verdict status = Verdict::NotApplicable;
  std::string statement;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> lower;
  double margin = 0.0;
  std::string note;
};

struct BoundsReport {
  double r = 0.0;
  FlowClassification classification;
  double eta_max = 0.0;
  double eta_min = 0.0;
  std::size_t samples = 0;
  /// Index of the sampled maximum lies strictly inside the window.
  bool eta_max_interior = false;
  bool window_relative = false;
  std::optional<double> d_minus;
  std::optional<double> d_plus;
  double d_c = 0.0;
  double d0 = std::numeric_limits<double>::infinity();
  double r_c = 0.0;
  std::optional<double> r0;
  bool stream_like = false;
  double flatness_tolerance = 0.0;
  VerdictRecord assertion1;
  VerdictRecord assertion2;
  VerdictRecord nonexistence_iii;
  VerdictRecord prop3;
  std::vector<std::string> surrogates;
  std::vector<std::string> notes;
};

namespace detail {

inline constexpr double kBoundsMargin = 1e-10;

inline double margin_at(double reference) { return kBoundsMargin * std::max(1.0, std::abs(reference)); }
inline bool strictly_greater(double a, double b) { return a - b > margin_at(b); }
inline bool at_least(double a, double b) { return a - b >= -margin_at(b); }

struct SurfaceStats {
  double max = 0.0;
  double min = 0.0;
  bool max_interior = false;
  bool flat = false;
  double flat_tol = 0.0;
};

inline SurfaceStats surface_stats(const std::vector<double>& eta) {
  if (eta.empty()) throw ValidationError("no surface samples given");
  for (double e : eta) {
    if (!std::isfinite(e) || !(e > 0.0)) {
      std::ostringstream os;
      os << "surface sample " << e << " is not positive";
      throw ValidationError(os.str());
    }
  }
  const auto [lo, hi] = std::minmax_element(eta.begin(), eta.end());
  SurfaceStats st;
  st.max = *hi;
  st.min = *lo;
  const auto idx = static_cast<std::size_t>(hi - eta.begin());
  st.max_interior = idx > 0 && idx + 1 < eta.size();
  st.flat_tol = 1e-9 * std::max(1.0, st.max);
  st.flat = st.max - st.min < st.flat_tol;
  return st;
}

inline VerdictRecord chain(double upper, double reference, double lower, const std::string& statement) {
  VerdictRecord v;
  v.statement = statement;
  v.lhs = upper;
  v.rhs = reference;
  v.lower = lower;
  v.margin = margin_at(reference);
  v.status = (at_least(upper, reference) && strictly_greater(reference, lower)) ? Verdict::Holds : Verdict::Violated;
  return v;
}

}  // namespace detail

/// d0 bounds for flows with omega(0) < 0 maximising Omega only at 0, for
/// r > r0: sup eta >= d0 > inf eta.
inline VerdictRecord check_prop3(const Flow& flow, const BernoulliAnalysis& a, double r, const std::vector<double>& eta) {
  const auto st = detail::surface_stats(eta);
  VerdictRecord v;
  v.statement = "eta_max >= d0 > eta_min";
  if (flow.condition() != Condition::II) {
    v.note = "hypothesis fails: flow is not of class (ii)";
    return v;
  }
  if (!a.r0 || !detail::strictly_greater(r, *a.r0)) {
    v.note = "hypothesis fails: r must exceed r0";
    return v;
  }
  v = detail::chain(st.max, a.d0, st.min, v.statement);
  if (v.status == Verdict::Violated && st.flat) v.note = "surface is flat to sampling resolution (stream-like input)";
  return v;
}

inline VerdictRecord check_prop3(const Flow& flow, double r, const std::vector<double>& eta) {
  return check_prop3(flow, analyze(flow), r, eta);
}

/// Evaluates the depth bounds for a steady wave with Bernoulli constant r
/// whose surface is sampled by eta. Never throws for r < r_c: that case is
/// reported as a violated first assertion.
inline BoundsReport check_bounds(const Flow& flow, const BernoulliAnalysis& a, double r, const std::vector<double>& eta,
                                 bool full_period = true) {
  if (!std::isfinite(r) || !(r > 0.0)) throw ValidationError("Bernoulli constant r must be positive");
  const auto st = detail::surface_stats(eta);
  BoundsReport rep;
  rep.r = r;
  rep.classification = flow.classification();
  rep.eta_max = st.max;
  rep.eta_min = st.min;
  rep.samples = eta.size();
  rep.eta_max_interior = st.max_interior;
  rep.window_relative = !full_period;
  rep.d_c = a.d_c;
  rep.d0 = a.d0;
  rep.r_c = a.r_c;
  rep.r0 = a.r0;
  rep.stream_like = st.flat;
  rep.flatness_tolerance = st.flat_tol;
  rep.surrogates = {"surface samples finite and positive"};
  if (rep.window_relative) rep.notes.push_back("window shorter than a period: eta_max/eta_min estimate sup/inf");
  rep.notes.push_back(st.max_interior ? "sampled maximum is interior to the window"
                                      : "sampled maximum sits at a window end; attainment undecided");

  auto& a1 = rep.assertion1;
  a1.statement = "r > r_c and eta > d_minus";
  const bool above_critical = detail::strictly_greater(r, a.r_c);
  std::optional<ConjugatePair> pair;
  if (above_critical) pair = conjugates(flow, a, r);
  if (!above_critical) {
    a1.status = Verdict::Violated;
    a1.lhs = r;
    a1.rhs = a.r_c;
    a1.margin = detail::margin_at(a.r_c);
    a1.note = "r does not exceed r_c: no wave other than a stream can have this Bernoulli constant";
  } else {
    rep.d_minus = pair->d_minus;
    rep.d_plus = pair->d_plus;
    a1.lhs = st.min;
    a1.rhs = pair->d_minus;
    a1.margin = detail::margin_at(pair->d_minus);
    a1.status = detail::strictly_greater(st.min, pair->d_minus) ? Verdict::Holds : Verdict::Violated;
    if (a1.status == Verdict::Violated && st.flat) a1.note = "surface is flat to sampling resolution (stream-like input)";
  }

  const bool pair_range = above_critical && pair->regime == Regime::SubcriticalPair;
  auto& a2 = rep.assertion2;
  a2.statement = "eta_max >= d_plus > eta_min";
  if (!pair_range) {
    a2.note = "r outside the range where both conjugate depths exist";
  } else if (st.flat) {
    a2.lhs = st.max;
    a2.rhs = *pair->d_plus;
    a2.lower = st.min;
    a2.note = "stream-like input: the bound concerns non-stream solutions";
  } else {
    a2 = detail::chain(st.max, *pair->d_plus, st.min, a2.statement);
  }

  auto& ne = rep.nonexistence_iii;
  ne.statement = "class (iii) with r >= r0 admits only stream solutions";
  ne.lhs = st.max - st.min;
  ne.rhs = st.flat_tol;
  if (flow.condition() == Condition::III && a.r0 && detail::at_least(r, *a.r0)) {
    ne.status = st.flat ? Verdict::Holds : Verdict::Violated;
    if (!st.flat) ne.note = "non-existence clause violated by input: non-flat surface at r >= r0 under class (iii)";
  } else if (flow.condition() == Condition::II && a.r0 && detail::at_least(r, *a.r0)) {
    ne.note = "class (ii) with r >= r0: conjectured non-existence, not asserted";
  } else {
    ne.note = "requires class (iii) and r >= r0";
  }

  rep.prop3 = check_prop3(flow, a, r, eta);
  return rep;
}

inline BoundsReport check_bounds(const Flow& flow, double r, const std::vector<double>& eta, bool full_period = true) {
  return check_bounds(flow, analyze(flow), r, eta, full_period);
}

}  // namespace vortwave

#endif  // VORTWAVE_BOUNDS_HPP
