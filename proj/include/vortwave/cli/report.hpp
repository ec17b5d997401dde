#ifndef VORTWAVE_CLI_REPORT_HPP
#define VORTWAVE_CLI_REPORT_HPP

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortwave/cli/config.hpp"

#include "vortwave/bernoulli.hpp"
#include "vortwave/bounds.hpp"
#include "vortwave/dispersion.hpp"
#include "vortwave/hodograph.hpp"
#include "vortwave/linearwave.hpp"
#include "vortwave/stream.hpp"
#include "vortwave/vorticity.hpp"

namespace vortwave::cli {

using json = nlohmann::ordered_json;

// Non-finite numbers are not valid JSON; infinity is spelled "inf".
inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

template <class T>
json optional_number(const std::optional<T>& x) {
  return x ? json(number(static_cast<double>(*x))) : json(nullptr);
}

inline json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

inline json vorticity_fragment(const Flow& flow) {
  const auto& c = flow.classification();
  json j;
  j["omega"] = flow.vorticity().describe();
  j["smooth"] = flow.vorticity().is_smooth();
  j["max_Omega"] = number(c.max_Omega);
  j["maximizers"] = numbers(c.maximizers);
  j["omega_at_0"] = number(c.omega_at_0);
  j["omega_at_1"] = number(c.omega_at_1);
  j["Omega_at_1"] = number(c.Omega_at_1);
  j["subcase"] = c.subcase;
  return j;
}

inline json bernoulli_fragment(const BernoulliAnalysis& a) {
  json j;
  j["classification"] = to_string(a.classification.condition);
  j["s0"] = number(a.s0);
  j["s_c"] = number(a.s_c);
  j["r_c"] = number(a.r_c);
  j["d_c"] = number(a.d_c);
  j["d0"] = number(a.d0);
  j["r0"] = optional_number(a.r0);
  j["stationarity_gap"] = number(a.stationarity_gap);
  j["s_minimiser"] = number(a.s_minimiser);
  return j;
}

inline json conjugates_fragment(const ConjugatePair& c) {
  json j;
  j["r"] = number(c.r);
  j["regime"] = to_string(c.regime);
  j["s_plus"] = optional_number(c.s_plus);
  j["s_minus"] = number(c.s_minus);
  j["d_plus"] = optional_number(c.d_plus);
  j["d_minus"] = number(c.d_minus);
  return j;
}

inline json stream_fragment(const StreamSolution& st) {
  json j;
  j["s"] = number(st.s());
  j["d"] = number(st.d());
  j["r"] = number(st.r());
  j["surface_slope"] = number(st.surface_slope());
  j["profile_nodes"] = st.has_profile() ? json(st.profile_nodes().size()) : json(nullptr);
  return j;
}

inline json shot_fragment(const ShotStream& sh) {
  json j;
  j["s"] = number(sh.s());
  j["d"] = number(sh.d());
  j["r"] = number(sh.r());
  j["surface_slope"] = number(sh.surface_slope());
  j["min_u"] = number(sh.min_u());
  j["y_at_min"] = number(sh.y_at_min());
  j["sign_change"] = sh.sign_change();
  j["unidirectional"] = sh.unidirectional();
  j["later_crossings"] = sh.later_crossings();
  j["continuation_complete"] = sh.continuation_complete();
  return j;
}

inline json dispersion_fragment(const DispersionResult& d) {
  json j;
  j["s"] = number(d.s);
  j["d"] = number(d.d);
  j["tau0"] = optional_number(d.tau0);
  j["sigma_at_tau0"] = d.tau0 ? number(d.sigma_at_tau0) : json(nullptr);
  j["assumption_I"] = d.assumption_I;
  j["assumption_II"] = d.assumption_II;
  j["resonant_multiple"] = d.resonant_multiple ? json(*d.resonant_multiple) : json(nullptr);
  j["tau_max"] = number(d.settings.tau_max);
  j["tau_step"] = number(d.settings.step);
  j["K"] = d.settings.K;
  j["multiple_margin"] = number(d.settings.multiple_margin);
  j["samples"] = d.taus.size();
  return j;
}

inline json wave_fragment(const WaveField& w, const WSolution& W, const SurfaceResidual& res) {
  json j;
  j["s"] = number(w.s());
  j["d"] = number(w.d());
  j["t"] = number(w.t());
  j["tau0"] = number(w.tau0());
  j["wavelength"] = number(w.wavelength());
  j["r"] = number(w.r());
  j["lambda"] = number(w.lambda());
  j["nx"] = w.nx();
  j["ny"] = w.ny();
  j["W_slope_bottom"] = number(W.slope_left);
  j["W_slope_surface"] = number(W.slope_right);
  j["W_slope_surface_closed_form"] = number(W.closed_form_right);
  j["W_consistent"] = W.consistent;
  j["surface_residual_max"] = number(res.max_abs);
  j["surface_residual_mean"] = number(res.mean_abs);
  j["surface_residual_x_at_max"] = number(res.x_at_max);
  j["surface_residual_stencil"] = res.stencil;
  return j;
}

inline json sign_change_fragment(const SignChangeReport& s) {
  json j;
  j["flag"] = s.flag;
  j["min"] = number(s.min_value);
  j["x"] = number(s.x);
  j["y"] = number(s.y);
  j["threshold"] = number(s.threshold);
  return j;
}

inline json residual_fragment(const ResidualReport& r) {
  json j;
  j["max"] = number(r.max_abs);
  j["mean"] = number(r.mean_abs);
  j["q_at_max"] = number(r.q_at_max);
  j["p_at_max"] = number(r.p_at_max);
  j["stencil"] = r.stencil;
  return j;
}

inline json verdict_fragment(const VerdictRecord& v) {
  json j;
  j["status"] = to_string(v.status);
  j["statement"] = v.statement;
  j["lhs"] = number(v.lhs);
  j["rhs"] = number(v.rhs);
  if (v.lower) j["lower"] = number(*v.lower);
  j["margin"] = number(v.margin);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline json bounds_fragment(const BoundsReport& b) {
  json j;
  j["r"] = number(b.r);
  j["eta_max"] = number(b.eta_max);
  j["eta_min"] = number(b.eta_min);
  j["samples"] = b.samples;
  j["eta_max_interior"] = b.eta_max_interior;
  j["window_relative"] = b.window_relative;
  j["d_minus"] = optional_number(b.d_minus);
  j["d_plus"] = optional_number(b.d_plus);
  j["stream_like"] = b.stream_like;
  j["flatness_tolerance"] = number(b.flatness_tolerance);
  j["assertion1"] = verdict_fragment(b.assertion1);
  j["assertion2"] = verdict_fragment(b.assertion2);
  j["nonexistence_iii"] = verdict_fragment(b.nonexistence_iii);
  j["prop3"] = verdict_fragment(b.prop3);
  j["surrogates"] = b.surrogates;
  j["notes"] = b.notes;
  return j;
}

inline json wheeler_fragment(const WheelerResult& w, double s, double q_lo, double q_hi) {
  json j;
  j["s"] = number(s);
  j["q_lo"] = number(q_lo);
  j["q_hi"] = number(q_hi);
  j["lhs"] = number(w.lhs);
  j["rhs"] = number(w.rhs);
  j["discrepancy"] = number(w.discrepancy);
  j["lhs_per_unit_window"] = number(w.lhs / w.window_length);
  j["reduced"] = w.reduced;
  j["phi1"] = number(w.phi1);
  j["surface_term"] = number(w.surface_term);
  j["area_term"] = number(w.area_term);
  j["head_of_s"] = number(w.head_of_s);
  return j;
}

// CSV with 17 significant digits so values round-trip.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw UsageError("cannot write '" + path + "'");
    out_ << std::setprecision(17);
  }
  void comment(const std::string& text) { out_ << "# " << text << '\n'; }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
    out_ << '\n';
  }
  void row(std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
      out_ << (first ? "" : ",") << v;
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace vortwave::cli

#endif  // VORTWAVE_CLI_REPORT_HPP
