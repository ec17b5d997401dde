#ifndef VORTWAVE_CLI_CLI_HPP
#define VORTWAVE_CLI_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortwave/cli/config.hpp"
#include "vortwave/cli/report.hpp"
#include "vortwave/scaling.hpp"
#include "vortwave/version.hpp"
#include "vortwave/vortwave.hpp"

namespace vortwave::cli {

enum ExitCode { kSuccess = 0, kValidation = 2, kNumerical = 3 };

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"analyze",      "stream",  "conjugates", "dispersion",
                                              "wave",         "check-bounds", "wheeler", "scale"};
  return names;
}

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> tol;
};

/// Quadrature/ODE tolerance: --tol, else TOOL_SEED_TOLERANCE, else defaults.
inline NumericOptions resolve_options(const Invocation& inv, std::string& source) {
  if (inv.tol) {
    if (!(*inv.tol > 0.0) || *inv.tol >= 1e-2) throw UsageError("--tol must lie in (0, 1e-2)");
    source = "--tol";
    return NumericOptions::with_tolerance(*inv.tol);
  }
  if (const char* env = std::getenv("TOOL_SEED_TOLERANCE"); env && *env) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (*end != '\0' || !(t > 0.0) || t >= 1e-2) {
      throw UsageError(std::string("TOOL_SEED_TOLERANCE must be a number in (0, 1e-2), got '") + env + "'");
    }
    source = "TOOL_SEED_TOLERANCE";
    return NumericOptions::with_tolerance(t);
  }
  source = "default";
  return NumericOptions{};
}

class Runner {
 public:
  Runner(Invocation inv, RunConfig cfg) : inv_(std::move(inv)), cfg_(std::move(cfg)) {}

  json run() {
    const auto start = std::chrono::steady_clock::now();
    std::string tol_source;
    options_ = resolve_options(inv_, tol_source);
    std::filesystem::create_directories(inv_.out_dir);

    report_["tool"] = "vortwave";
    report_["version"] = kVersion;
    report_["command"] = inv_.command;
    json echo = json::object();
    for (const auto& [section, key] : cfg_.order()) {
      echo[section.empty() ? key : section + "." + key] = cfg_.values().at(key);
    }
    report_["config"] = echo;
    json numerics;
    numerics["tolerance_source"] = tol_source;
    numerics["quadrature_abs_tol"] = options_.quadrature.abs_tol;
    numerics["quadrature_rel_tol"] = options_.quadrature.rel_tol;
    numerics["ivp_rel_tol"] = options_.ivp.rel_tol;
    numerics["ivp_abs_tol"] = options_.ivp.abs_tol;
    numerics["guard_band"] = options_.guard_band;
    report_["numerics"] = numerics;

    const auto& c = inv_.command;
    if (c == "analyze") analyze_cmd();
    else if (c == "stream") stream_cmd();
    else if (c == "conjugates") conjugates_cmd();
    else if (c == "dispersion") dispersion_cmd();
    else if (c == "wave") wave_cmd();
    else if (c == "check-bounds") bounds_cmd();
    else if (c == "wheeler") wheeler_cmd();
    else if (c == "scale") scale_cmd();
    else throw UsageError("unknown command '" + c + "'");

    for (const auto& key : cfg_.unused()) warnings_.push_back("config key '" + key + "' is not used by " + c);
    report_["files"] = files_;
    report_["warnings"] = warnings_;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report_["timing"] = {{"seconds", elapsed.count()}};
    write_text("report.json", report_.dump(2) + "\n");
    return report_;
  }

 private:
  Flow flow() {
    if (!flow_) {
      flow_.emplace(parse_vorticity(cfg_.text("omega")), options_);
      report_["vorticity"] = vorticity_fragment(*flow_);
    }
    return *flow_;
  }

  const BernoulliAnalysis& analysis() {
    if (!analysis_) {
      analysis_ = analyze(flow());
      report_["bernoulli"] = bernoulli_fragment(*analysis_);
    }
    return *analysis_;
  }

  std::string path(const std::string& name) const { return (std::filesystem::path(inv_.out_dir) / name).string(); }

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream f(path(name));
    if (!f) throw UsageError("cannot write '" + path(name) + "'");
    f << text;
  }

  CsvWriter csv(const std::string& name) {
    files_.push_back(name);
    return CsvWriter(path(name));
  }

  static std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }

  /// Base stream for dispersion/wave: given s, or the subcritical conjugate of r.
  StreamSolution base_stream() {
    const bool has_r = cfg_.has("r");
    const bool has_s = cfg_.has("s");
    if (has_r == has_s) throw UsageError("give exactly one of 'r' or 's' for the base stream");
    const Flow f = flow();
    if (has_s) return make_stream(f, cfg_.number("s"));
    const auto pair = conjugates(f, analysis(), cfg_.number("r"));
    report_["conjugates"] = conjugates_fragment(pair);
    if (!pair.s_plus) throw UsageError("r admits no subcritical conjugate stream (only-supercritical regime)");
    return make_stream(f, *pair.s_plus);
  }

  DispersionSettings dispersion_settings() const {
    DispersionSettings set;
    set.tau_max = cfg_.number_or("tau_max", set.tau_max);
    set.step = cfg_.number_or("tau_step", set.step);
    set.K = static_cast<int>(cfg_.integer_or("K", set.K));
    set.multiple_margin = cfg_.number_or("multiple_margin", set.multiple_margin);
    return set;
  }

  DispersionResult run_dispersion(const StreamSolution& st) {
    auto res = find_tau0(st, dispersion_settings());
    report_["dispersion"] = dispersion_fragment(res);
    for (const auto& w : res.warnings) warnings_.push_back(w);
    auto out = csv("sigma.csv");
    out.comment("s=" + fmt(st.s()) + ",d=" + fmt(st.d()));
    out.header({"tau", "sigma"});
    for (std::size_t i = 0; i < res.taus.size(); ++i) out.row({res.taus[i], res.sigmas[i]});
    return res;
  }

  void analyze_cmd() { analysis(); }

  void stream_cmd() {
    const Flow f = flow();
    const double s = cfg_.number("s");
    const bool shoot = cfg_.flag_or("shoot", false) || s < f.s0();
    if (shoot) {
      const auto shot = shoot_stream(f, s, cfg_.number_or("max_depth", 100.0));
      report_["shot"] = shot_fragment(shot);
      report_["sign_change"] = sign_change_fragment(detect_sign_change(shot));
      auto out = csv("profile.csv");
      out.comment("s=" + fmt(shot.s()) + ",d=" + fmt(shot.d()) + ",r=" + fmt(shot.r()));
      out.header({"y", "u"});
      for (double y : shot.sample_y()) out.row({y, shot.u(y)});
      return;
    }
    const auto st = make_stream(f, s);
    report_["stream"] = stream_fragment(st);
    report_["sign_change"] = sign_change_fragment(detect_sign_change(st));
    auto out = csv("profile.csv");
    out.comment("s=" + fmt(st.s()) + ",d=" + fmt(st.d()) + ",r=" + fmt(st.r()));
    out.header({"p", "H"});
    for (std::size_t j = 0; j < st.profile_nodes().size(); ++j) {
      out.row({st.profile_nodes()[j], st.profile_values()[j]});
    }
  }

  void conjugates_cmd() {
    const auto pair = conjugates(flow(), analysis(), cfg_.number("r"));
    report_["conjugates"] = conjugates_fragment(pair);
  }

  void dispersion_cmd() {
    const auto st = base_stream();
    report_["stream"] = stream_fragment(st);
    run_dispersion(st);
  }

  WaveField build(const StreamSolution& st, const DispersionResult& disp) {
    const auto nx = static_cast<std::size_t>(cfg_.integer_or("nx", 129));
    const auto ny = static_cast<std::size_t>(cfg_.integer_or("ny", 129));
    return build_wave(st, disp, cfg_.number("t"), nx, ny);
  }

  void write_surface(const WaveField& w) {
    auto out = csv("surface.csv");
    out.comment("s=" + fmt(w.s()) + ",t=" + fmt(w.t()) + ",tau0=" + fmt(w.tau0()) + ",r=" + fmt(w.r()) + ",lambda=0");
    out.header({"x", "eta"});
    for (std::size_t i = 0; i < w.nx(); ++i) out.row({w.x()[i], w.eta()[i]});
  }

  void wave_cmd() {
    const auto st = base_stream();
    report_["stream"] = stream_fragment(st);
    const auto disp = run_dispersion(st);
    const auto w = build(st, disp);
    const auto res = surface_bernoulli_residual(w);
    report_["wave"] = wave_fragment(w, w.model().W(), res);
    report_["sign_change"] = sign_change_fragment(detect_sign_change(w));
    if (!w.model().W().consistent) warnings_.push_back("W'(d) does not match its closed form at tau0");
    {
      auto out = csv("field.csv");
      out.comment("s=" + fmt(w.s()) + ",t=" + fmt(w.t()) + ",tau0=" + fmt(w.tau0()) + ",r=" + fmt(w.r()));
      out.header({"x", "y", "psi"});
      for (std::size_t i = 0; i < w.nx(); ++i) {
        for (std::size_t j = 0; j < w.ny(); ++j) out.row({w.x()[i], w.y(i, j), w.psi(i, j)});
      }
    }
    write_surface(w);
    auto out = csv("residuals.csv");
    out.comment("surface Bernoulli residual psi_x^2 + psi_y^2 + 2 eta - 3 r; " + res.stencil);
    out.header({"x", "residual"});
    for (std::size_t i = 0; i < res.x.size(); ++i) out.row({res.x[i], res.values[i]});
  }

  std::vector<double> read_surface(const std::string& name) const {
    std::filesystem::path p(name);
    if (p.is_relative()) p = std::filesystem::path(cfg_.directory()) / p;
    std::ifstream in(p);
    if (!in) throw UsageError("cannot read surface file '" + p.string() + "'");
    std::vector<double> eta;
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto comma = line.find_last_of(',');
      const std::string field = detail::trim(comma == std::string::npos ? line : line.substr(comma + 1));
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0') {
        if (eta.empty()) continue;  // header row
        throw UsageError("malformed surface sample '" + field + "' in " + p.string());
      }
      eta.push_back(v);
    }
    return eta;
  }

  void bounds_cmd() {
    const Flow f = flow();
    const double r = cfg_.number("r");
    const auto& a = analysis();
    std::vector<double> eta;
    bool full_period = cfg_.flag_or("full_period", true);
    if (cfg_.has("surface") == cfg_.has("t")) throw UsageError("give exactly one of 'surface' (file) or 't' (build a wave)");
    if (cfg_.has("surface")) {
      eta = read_surface(cfg_.text("surface"));
    } else {
      if (r < a.r_c) throw UsageError("cannot build a wave for r below r_c; supply a surface file instead");
      const auto pair = conjugates(f, a, r);
      report_["conjugates"] = conjugates_fragment(pair);
      if (!pair.s_plus) throw UsageError("r admits no subcritical conjugate stream to build a wave on");
      const auto st = make_stream(f, *pair.s_plus);
      const auto disp = run_dispersion(st);
      const auto w = build(st, disp);
      write_surface(w);
      eta = w.eta();
      full_period = true;
    }
    report_["bounds"] = bounds_fragment(check_bounds(f, a, r, eta, full_period));
  }

  void wheeler_cmd() {
    const Flow f = flow();
    const double r = cfg_.number("r");
    const auto& a = analysis();
    const auto pair = conjugates(f, a, r);
    report_["conjugates"] = conjugates_fragment(pair);
    const std::string field = cfg_.text_or("field", "conjugate");
    const auto nq = static_cast<std::size_t>(cfg_.integer_or("nq", 129));
    const auto np = static_cast<std::size_t>(cfg_.integer_or("np", 129));
    std::optional<HodographField> hf;
    double s_cmp = 0.0;
    double q_hi = 1.0;
    if (field == "conjugate" || field == "self") {
      hf = to_strip(make_stream(f, pair.s_minus), nq, np, cfg_.number_or("q_hi", 1.0));
      if (field == "self") {
        s_cmp = pair.s_minus;
      } else {
        if (!pair.s_plus) throw UsageError("r admits no subcritical conjugate to compare with");
        s_cmp = *pair.s_plus;
      }
      q_hi = hf->q().back();
    } else if (field == "wave") {
      if (!pair.s_plus) throw UsageError("r admits no subcritical conjugate stream to build a wave on");
      const auto st = make_stream(f, *pair.s_plus);
      const auto disp = run_dispersion(st);
      const auto w = build(st, disp);
      hf = to_strip(w);
      s_cmp = *pair.s_plus;
      q_hi = hf->q().back();
      const auto res = bernoulli_residual(*hf);
      report_["hodograph_residual"] = residual_fragment(res);
      auto out = csv("residuals.csv");
      out.comment("hodograph Bernoulli residual at p = 1; " + res.stencil);
      out.header({"q", "residual"});
      for (std::size_t i = 0; i < res.q.size(); ++i) out.row({res.q[i], res.values[i]});
    } else {
      throw UsageError("parameter 'field' must be conjugate, self or wave, got '" + field + "'");
    }
    s_cmp = cfg_.number_or("s", s_cmp);
    const double q_lo = cfg_.number_or("q_lo", 0.0);
    const auto w = wheeler_identity(*hf, f, s_cmp, q_lo, q_hi);
    report_["wheeler"] = wheeler_fragment(w, s_cmp, q_lo, q_hi);
    for (const auto& msg : w.warnings) warnings_.push_back(msg);
  }

  void scale_cmd() {
    const double Q = cfg_.number("Q");
    const double g = cfg_.number("g");
    const auto quantity = parse_quantity(cfg_.text("quantity"));
    const double value = cfg_.number_or("value", 1.0);
    const bool inverse = cfg_.flag_or("inverse", false);
    json j;
    j["Q"] = Q;
    j["g"] = g;
    j["quantity"] = cfg_.text("quantity");
    j["inverse"] = inverse;
    j["scale"] = reference_scale(Q, g, quantity);
    j["value"] = value;
    j["result"] = scale_to_nondimensional(Q, g, quantity, value, inverse);
    report_["scaling"] = j;
  }

  Invocation inv_;
  RunConfig cfg_;
  NumericOptions options_;
  std::optional<Flow> flow_;
  std::optional<BernoulliAnalysis> analysis_;
  json report_ = json::object();
  std::vector<std::string> files_;
  std::vector<std::string> warnings_;
};

/// Entry point shared by the executable and the tests.
inline int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady water waves with vorticity: stream solutions, critical values, dispersion, bounds"};
  Invocation inv;
  app.add_option("command", inv.command, "analyze | stream | conjugates | dispersion | wave | check-bounds | wheeler | scale")
      ->required();
  app.add_option("--config", inv.config_path, "run configuration (key = value, [sections] allowed)")->required();
  app.add_option("--out", inv.out_dir, "output directory (created if missing)");
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "quadrature and ODE tolerance override");
  app.add_flag_callback("--version", [&out] {
    out << "vortwave " << kVersion << '\n';
    throw CLI::Success();
  });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidation;
  }
  if (*tol_opt) inv.tol = tol;
  try {
    if (std::find(commands().begin(), commands().end(), inv.command) == commands().end()) {
      throw UsageError("unknown command '" + inv.command + "'");
    }
    Runner runner(inv, RunConfig::load(inv.config_path));
    runner.run();
    out << "wrote " << (std::filesystem::path(inv.out_dir) / "report.json").string() << '\n';
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace vortwave::cli

#endif  // VORTWAVE_CLI_CLI_HPP
