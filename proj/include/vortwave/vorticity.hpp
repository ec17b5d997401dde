#ifndef VORTWAVE_VORTICITY_HPP
#define VORTWAVE_VORTICITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vortwave/errors.hpp"
#include "vortwave/numerics/roots.hpp"
#include "vortwave/options.hpp"

namespace vortwave {

enum class Representation { Constant, Polynomial, Table };

/// Vorticity omega(tau) on [0, 1] together with its exact antiderivative
/// Omega(tau) = int_0^tau omega. Immutable after construction.
class VorticityDistribution {
 public:
  static VorticityDistribution constant(double b) {
    VorticityDistribution d(Representation::Constant);
    d.coeffs_ = {b};
    d.finish_polynomial();
    return d;
  }

  /// Coefficients in ascending powers of tau.
  static VorticityDistribution polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ValidationError("polynomial vorticity needs at least one coefficient");
    for (double c : coeffs) {
      if (!std::isfinite(c)) throw ValidationError("polynomial vorticity coefficient is not finite");
    }
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    VorticityDistribution d(Representation::Polynomial);
    d.coeffs_ = std::move(coeffs);
    d.finish_polynomial();
    return d;
  }

  /// Piecewise-linear samples; knots strictly increasing from 0 to 1.
  static VorticityDistribution table(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2) {
      throw ValidationError("vorticity table needs at least two (tau, value) pairs");
    }
    if (knots.front() != 0.0 || knots.back() != 1.0) {
      throw ValidationError("vorticity table knots must span [0, 1] exactly");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!std::isfinite(values[i]) || !std::isfinite(knots[i])) {
        throw ValidationError("vorticity table entry is not finite");
      }
      if (i > 0 && !(knots[i] > knots[i - 1])) {
        throw ValidationError("vorticity table knots must be strictly increasing");
      }
    }
    VorticityDistribution d(Representation::Table);
    d.knots_ = std::move(knots);
    d.values_ = std::move(values);
    d.cumulative_.assign(d.knots_.size(), 0.0);
    for (std::size_t i = 1; i < d.knots_.size(); ++i) {
      d.cumulative_[i] = d.cumulative_[i - 1] +
                         0.5 * (d.values_[i - 1] + d.values_[i]) * (d.knots_[i] - d.knots_[i - 1]);
    }
    return d;
  }

  Representation representation() const { return rep_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  double omega(double tau) const {
    check_domain(tau);
    return omega_extended(tau);
  }

  double Omega(double tau) const {
    check_domain(tau);
    if (rep_ != Representation::Table) return tau * horner(omega_coeffs_, tau);
    const std::size_t i = segment(tau);
    return cumulative_[i] + 0.5 * (values_[i] + table_value(i, tau)) * (tau - knots_[i]);
  }

  /// Omega(1) - Omega(1 - delta), evaluated without cancellation.
  double Omega_tail(double delta) const {
    if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("tail length outside [0, 1]");
    if (rep_ != Representation::Table) return delta * horner(tail_coeffs_, delta);
    const double from = 1.0 - delta;
    double acc = 0.0;
    std::size_t i = knots_.size() - 1;
    while (i > 0 && knots_[i - 1] >= from) {
      acc += 0.5 * (values_[i - 1] + values_[i]) * (knots_[i] - knots_[i - 1]);
      --i;
    }
    if (i > 0 && knots_[i] > from) {
      const double upper = knots_[i];
      const double width = upper - from;
      const double v_from = table_value(i - 1, from);
      acc += 0.5 * (v_from + values_[i]) * width;
    }
    return acc;
  }

  /// omega at any real argument. Tables extend by their end values.
  double omega_extended(double tau) const {
    if (rep_ != Representation::Table) return horner(coeffs_, tau);
    if (tau <= 0.0) return values_.front();
    if (tau >= 1.0) return values_.back();
    return table_value(segment(tau), tau);
  }

  /// d omega / d tau at any real argument (a.e. derivative for tables).
  double omega_prime(double tau) const {
    if (rep_ != Representation::Table) return horner(deriv_coeffs_, tau);
    if (tau < 0.0 || tau > 1.0) return 0.0;
    const std::size_t i = segment(tau);
    return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
  }

  /// False when omega' has jumps (tables with a kink).
  bool is_smooth() const {
    if (rep_ != Representation::Table) return true;
    const double first = omega_prime(0.0);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double slope = (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
      if (std::abs(slope - first) > 1e-12 * std::max(1.0, std::abs(first))) return false;
    }
    return true;
  }

  /// Zeros of omega inside (0, 1): exact for tables, sign changes on a
  /// 10^4-point grid polished by Brent for polynomials.
  std::vector<double> interior_zeros() const {
    std::vector<double> zeros;
    if (rep_ == Representation::Constant) return zeros;
    if (rep_ == Representation::Table) {
      for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double a = values_[i];
        const double b = values_[i + 1];
        if (i > 0 && a == 0.0) zeros.push_back(knots_[i]);
        if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
          zeros.push_back(knots_[i] - a * (knots_[i + 1] - knots_[i]) / (b - a));
        }
      }
      return zeros;
    }
    constexpr int grid = 10000;
    double prev = omega_extended(0.0);
    for (int i = 1; i <= grid; ++i) {
      const double tau = static_cast<double>(i) / grid;
      const double cur = omega_extended(tau);
      if (i < grid && cur == 0.0) zeros.push_back(tau);
      if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
        const double lo = static_cast<double>(i - 1) / grid;
        zeros.push_back(numerics::find_root([this](double x) { return omega_extended(x); }, lo, tau,
                                            1e-15));
      }
      prev = cur;
    }
    return zeros;
  }

  /// Text form accepted by parse_vorticity.
  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (rep_) {
      case Representation::Constant:
        os << "constant " << coeffs_.front();
        break;
      case Representation::Polynomial:
        os << "poly";
        for (double c : coeffs_) os << ' ' << c;
        break;
      case Representation::Table:
        os << "table";
        for (std::size_t i = 0; i < knots_.size(); ++i) os << ' ' << knots_[i] << ':' << values_[i];
        break;
    }
    return os.str();
  }

 private:
  explicit VorticityDistribution(Representation rep) : rep_(rep) {}

  static double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  static void check_domain(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
      std::ostringstream os;
      os << "stream-function value " << tau << " outside [0, 1]";
      throw DomainError(os.str());
    }
  }

  void finish_polynomial() {
    const std::size_t n = coeffs_.size();
    omega_coeffs_.resize(n);
    for (std::size_t k = 0; k < n; ++k) omega_coeffs_[k] = coeffs_[k] / static_cast<double>(k + 1);
    deriv_coeffs_.assign(n > 1 ? n - 1 : 1, 0.0);
    for (std::size_t k = 1; k < n; ++k) deriv_coeffs_[k - 1] = coeffs_[k] * static_cast<double>(k);
    // omega(1 - x) = sum_j b_j x^j, then tail(delta) = sum_j b_j delta^(j+1) / (j+1).
    std::vector<double> shifted(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      double binom = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        shifted[j] += coeffs_[k] * binom * ((j % 2 == 0) ? 1.0 : -1.0);
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
      }
    }
    tail_coeffs_.resize(n);
    for (std::size_t j = 0; j < n; ++j) tail_coeffs_[j] = shifted[j] / static_cast<double>(j + 1);
  }

  std::size_t segment(double tau) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), tau);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, knots_.size() - 2);
  }

  double table_value(std::size_t i, double tau) const {
    const double w = (tau - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
  }

  Representation rep_;
  std::vector<double> coeffs_;
  std::vector<double> omega_coeffs_;
  std::vector<double> deriv_coeffs_;
  std::vector<double> tail_coeffs_;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

/// Parses `constant <b>`, `poly <c0> <c1> ...` or `table <tau:v> <tau:v> ...`.
inline VorticityDistribution parse_vorticity(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  auto number = [](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ValidationError("not a number in vorticity description: '" + tok + "'");
    }
    if (used != tok.size()) throw ValidationError("not a number in vorticity description: '" + tok + "'");
    return v;
  };
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (kind == "constant") {
    if (tokens.size() != 1) throw ValidationError("'constant' takes exactly one value");
    return VorticityDistribution::constant(number(tokens[0]));
  }
  if (kind == "poly") {
    if (tokens.empty()) throw ValidationError("'poly' needs at least one coefficient");
    std::vector<double> c;
    for (const auto& t : tokens) c.push_back(number(t));
    return VorticityDistribution::polynomial(std::move(c));
  }
  if (kind == "table") {
    std::vector<double> knots;
    std::vector<double> values;
    for (const auto& t : tokens) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) throw ValidationError("table entry '" + t + "' is not tau:value");
      knots.push_back(number(t.substr(0, colon)));
      values.push_back(number(t.substr(colon + 1)));
    }
    return VorticityDistribution::table(std::move(knots), std::move(values));
  }
  throw ValidationError("unknown vorticity representation '" + kind + "' (expected constant, poly or table)");
}

enum class Condition { I, II, III };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::I:
      return "i";
    case Condition::II:
      return "ii";
    case Condition::III:
      return "iii";
  }
  return "?";
}

struct FlowClassification {
  Condition condition = Condition::I;
  double max_Omega = 0.0;
  std::vector<double> maximizers;
  double omega_at_0 = 0.0;
  double omega_at_1 = 0.0;
  double Omega_at_1 = 0.0;
  double s0 = 0.0;
  bool d0_finite = false;
  std::string subcase;
};

namespace detail {

enum class Tri { False, True, Ambiguous };

inline Tri all_of(std::initializer_list<Tri> parts) {
  bool ambiguous = false;
  for (Tri t : parts) {
    if (t == Tri::False) return Tri::False;
    if (t == Tri::Ambiguous) ambiguous = true;
  }
  return ambiguous ? Tri::Ambiguous : Tri::True;
}

// a < b with a declared resolution: exact ties are decided, gaps below
// margin are not.
inline Tri strictly_less(double a, double b, double margin) {
  if (a == b) return Tri::False;
  if (std::abs(a - b) <= margin) return Tri::Ambiguous;
  return a < b ? Tri::True : Tri::False;
}

struct Candidates {
  std::vector<double> tau;
  std::vector<double> value;
};

inline Candidates omega_extrema_candidates(const VorticityDistribution& dist) {
  Candidates c;
  c.tau.push_back(0.0);
  for (double z : dist.interior_zeros()) c.tau.push_back(z);
  c.tau.push_back(1.0);
  for (double t : c.tau) c.value.push_back(dist.Omega(t));
  return c;
}

}  // namespace detail

/// max over [0,1] of Omega, located at the zeros of omega and the endpoints.
inline double max_Omega(const VorticityDistribution& dist) {
  const auto c = detail::omega_extrema_candidates(dist);
  return *std::max_element(c.value.begin(), c.value.end());
}

/// s0 = sqrt(2 max Omega); Omega(0) = 0 keeps the radicand non-negative.
inline double compute_s0(const VorticityDistribution& dist) {
  return std::sqrt(2.0 * std::max(0.0, max_Omega(dist)));
}

/// Assigns conditions (ii), then (iii), else (i). Strict inequalities are
/// decided with a relative margin of 1e-12; a competing value inside the
/// margin that is not an exact tie raises AmbiguityError.
inline FlowClassification classify(const VorticityDistribution& dist) {
  using detail::Tri;
  const auto cand = detail::omega_extrema_candidates(dist);
  double scale = 1.0;
  for (double v : cand.value) scale = std::max(scale, std::abs(v));
  const double margin = 1e-12 * scale;

  FlowClassification fc;
  fc.omega_at_0 = dist.omega(0.0);
  fc.omega_at_1 = dist.omega(1.0);
  fc.Omega_at_1 = dist.Omega(1.0);
  fc.max_Omega = *std::max_element(cand.value.begin(), cand.value.end());
  for (std::size_t i = 0; i < cand.tau.size(); ++i) {
    if (fc.max_Omega - cand.value[i] <= margin) fc.maximizers.push_back(cand.tau[i]);
  }
  fc.s0 = std::sqrt(2.0 * std::max(0.0, fc.max_Omega));

  // (ii): Omega(0) > Omega(tau) on (0, 1] and omega(0) < 0.
  Tri ii = fc.omega_at_0 < 0.0 ? Tri::True : Tri::False;
  for (std::size_t i = 1; i < cand.tau.size() && ii != Tri::False; ++i) {
    ii = detail::all_of({ii, detail::strictly_less(cand.value[i], 0.0, margin)});
  }

  // (iii): Omega(tau) < Omega(1) on (0, 1) and omega(1) > 0; if Omega(1) = 0
  // then omega(0) < 0 as well. Near tau = 0+ Omega tends to Omega(0) = 0.
  Tri iii = fc.omega_at_1 > 0.0 ? Tri::True : Tri::False;
  for (std::size_t i = 1; i + 1 < cand.tau.size() && iii != Tri::False; ++i) {
    iii = detail::all_of({iii, detail::strictly_less(cand.value[i], fc.Omega_at_1, margin)});
  }
  if (iii != Tri::False) {
    if (fc.Omega_at_1 == 0.0) {
      iii = detail::all_of({iii, fc.omega_at_0 < 0.0 ? Tri::True : Tri::False});
    } else {
      iii = detail::all_of({iii, detail::strictly_less(0.0, fc.Omega_at_1, margin)});
    }
  }

  if (ii == Tri::Ambiguous || iii == Tri::Ambiguous) {
    std::ostringstream os;
    os.precision(17);
    os << "classification is indeterminate within the 1e-12 margin; competing maximisers:";
    for (std::size_t i = 0; i < cand.tau.size(); ++i) {
      if (std::abs(fc.max_Omega - cand.value[i]) <= 2.0 * margin ||
          std::abs(cand.value[i] - (i == 0 ? fc.Omega_at_1 : 0.0)) <= margin) {
        os << " tau=" << cand.tau[i] << " (Omega=" << cand.value[i] << ")";
      }
    }
    throw AmbiguityError(os.str());
  }

  if (ii == Tri::True) {
    fc.condition = Condition::II;
    fc.subcase = "unique maximum of Omega at tau=0 with omega(0)<0";
  } else if (iii == Tri::True) {
    fc.condition = Condition::III;
    fc.subcase = fc.Omega_at_1 == 0.0 ? "Omega(1)=0 with omega(0)<0 and omega(1)>0"
                                      : "unique maximum of Omega at tau=1 with omega(1)>0";
  } else {
    fc.condition = Condition::I;
    const bool at0 = std::find(fc.maximizers.begin(), fc.maximizers.end(), 0.0) != fc.maximizers.end();
    const bool at1 = std::find(fc.maximizers.begin(), fc.maximizers.end(), 1.0) != fc.maximizers.end();
    const bool interior = fc.maximizers.size() > static_cast<std::size_t>(at0) + static_cast<std::size_t>(at1);
    if (interior) {
      fc.subcase = "maximum of Omega attained inside (0,1)";
    } else if (at0 && at1) {
      fc.subcase = "maximum of Omega attained at both end-points";
    } else if (at1) {
      fc.subcase = "maximum of Omega at tau=1 with omega(1)=0";
    } else {
      fc.subcase = "maximum of Omega at tau=0 with omega(0)=0";
    }
  }
  fc.d0_finite = fc.condition != Condition::I;
  return fc;
}

/// A vorticity distribution with its classification and the tolerances used
/// by every downstream computation.
class Flow {
 public:
  explicit Flow(VorticityDistribution dist, NumericOptions options = {})
      : dist_(std::move(dist)), cls_(classify(dist_)), options_(options) {}

  const VorticityDistribution& vorticity() const { return dist_; }
  const FlowClassification& classification() const { return cls_; }
  const NumericOptions& options() const { return options_; }
  double s0() const { return cls_.s0; }
  Condition condition() const { return cls_.condition; }

 private:
  VorticityDistribution dist_;
  FlowClassification cls_;
  NumericOptions options_;
};

}  // namespace vortwave

#endif  // VORTWAVE_VORTICITY_HPP
