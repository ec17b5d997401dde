// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vortwave/vortwave.hpp"

using namespace vortwave;

namespace {

Flow flow_of(const std::string& text) { return Flow(parse_vorticity(text)); }

/// Collects failed sub-checks; a criterion passes when none failed.
class Checks {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    record(ok, what, got, want, tol, "|got - want| <= tol");
  }
  void below(const std::string& what, double got, double bound) {
    const bool ok = got < bound;
    record(ok, what, got, bound, bound, "got < bound");
  }
  void at_least(const std::string& what, double got, double bound) {
    const bool ok = got >= bound;
    record(ok, what, got, bound, bound, "got >= bound");
  }
  void truth(const std::string& what, bool ok) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    os << count_ - failures_.size() << "/" << count_ << " checks";
    for (const auto& f : failures_) os << "\n      failed: " << f;
    return os.str();
  }

 private:
  void record(bool ok, const std::string& what, double got, double want, double tol, const char* rule) {
    ++count_;
    if (ok) return;
    std::ostringstream os;
    os.precision(12);
    os << what << " (got " << got << ", reference " << want << ", tol " << tol << ", " << rule << ")";
    failures_.push_back(os.str());
  }
  std::size_t count_ = 0;
  std::vector<std::string> failures_;
};

struct Base {
  StreamSolution stream;
  DispersionResult disp;
};

Base irrotational_base(double r) {
  const Flow f = flow_of("constant 0");
  auto st = make_stream(f, *conjugates(f, r).s_plus);
  auto disp = find_tau0(st);
  return {std::move(st), std::move(disp)};
}

double irrotational_s(double r, double lo, double hi) {
  return oracle::bisect([r](double s) { return oracle::head_const(0.0, s) - r; }, lo, hi);
}

void irrotational_critical(Checks& c) {
  const auto cp = find_critical(flow_of("constant 0"));
  const auto grid = oracle::grid_min([](double s) { return oracle::head_const(0.0, s); }, 0.5, 3.0);
  c.near("s_c against 1", cp.s_c, 1.0, 1e-8);
  c.near("r_c against 1", cp.r_c, 1.0, 1e-8);
  c.near("s_c against grid scan", cp.s_c, grid.first, 1e-5);
  c.near("r_c against grid scan", cp.r_c, grid.second, 1e-10);
}

void constant_vorticity_criticals(Checks& c) {
  const auto a2 = analyze(flow_of("constant 2"));
  c.truth("s0 == 2 exactly for omega = 2", a2.s0 == 2.0);
  c.near("d0 for omega = 2", a2.d0, 1.0, 1e-10);
  c.truth("r0 present for omega = 2", a2.r0.has_value());
  if (a2.r0) c.near("r0 for omega = 2", *a2.r0, 2.0 / 3.0, 1e-10);
  const auto grid = oracle::grid_min([](double s) { return oracle::head_const(2.0, s); }, 2.0, 4.0);
  c.near("s_c against grid for omega = 2", a2.s_c, grid.first, 1e-4);
  c.near("r_c against grid for omega = 2", a2.r_c, grid.second, 1e-4);
  c.near("s_c ~ 2.0399", a2.s_c, 2.0399, 1e-4);
  c.near("r_c ~ 0.59987", a2.r_c, 0.59987, 1e-4);

  const auto am2 = analyze(flow_of("constant -2"));
  c.near("d0 for omega = -2", am2.d0, 1.0, 1e-10);
  c.truth("r0 present for omega = -2", am2.r0.has_value());
  if (am2.r0) c.near("r0 for omega = -2", *am2.r0, 2.0, 1e-10);
}

void stationarity(Checks& c) {
  for (const auto& text : {"constant 0", "constant 2", "constant -2", "poly -3 6", "poly 1 1"}) {
    const Flow f = flow_of(text);
    const auto cp = find_critical(f);
    const auto& dist = f.vorticity();
    const double s = cp.s_c;
    const double phi1 = oracle::simpson([&](double t) { return std::pow(s * s - 2.0 * dist.Omega(t), -1.5); }, 0.0, 1.0);
    c.below(std::string("|Phi(1; s_c) - 1| for ") + text, std::abs(phi1 - 1.0), 1e-8);
  }
}

void conjugate_pair(Checks& c) {
  const Flow f = flow_of("constant 0");
  const auto a = analyze(f);
  const auto pair = conjugates(f, a, 1.1);
  const double sp = irrotational_s(1.1, 0.1, 1.0);
  const double sm = irrotational_s(1.1, 1.0, 3.0);
  c.truth("s_plus present", pair.s_plus.has_value());
  if (!pair.s_plus) return;
  c.near("s_plus against bisection", *pair.s_plus, sp, 1e-5);
  c.near("s_minus against bisection", pair.s_minus, sm, 1e-5);
  c.near("d_plus against 1/s_plus", *pair.d_plus, 1.0 / sp, 1e-5);
  c.near("d_minus against 1/s_minus", pair.d_minus, 1.0 / sm, 1e-5);
  c.near("s_plus ~ 0.71842", *pair.s_plus, 0.71842, 1e-5);
  c.near("s_minus ~ 1.34751", pair.s_minus, 1.34751, 1e-5);
  c.near("d_plus ~ 1.39194", *pair.d_plus, 1.39194, 1e-5);
  c.near("d_minus ~ 0.74211", pair.d_minus, 0.74211, 1e-5);
  c.truth("s0 < s_plus < s_c < s_minus", a.s0 < *pair.s_plus && *pair.s_plus < a.s_c && a.s_c < pair.s_minus);
  c.truth("d_plus > 1 > d_minus", *pair.d_plus > 1.0 && 1.0 > pair.d_minus);
}

void dispersion_root(Checks& c) {
  const auto b = irrotational_base(1.1);
  const double s = b.stream.s();
  const double tau_oracle = oracle::bisect([s](double t) { return oracle::sigma_irrotational(s, t); }, 0.5, 5.0);
  c.truth("tau0 found", b.disp.tau0.has_value());
  if (!b.disp.tau0) return;
  c.near("tau0 against closed-form root", *b.disp.tau0, tau_oracle, 1e-3);
  c.near("tau0 ~ 1.920", *b.disp.tau0, 1.920, 1e-3);
  c.truth("assumption II (no resonant multiple)", b.disp.assumption_II && !b.disp.resonant_multiple);
  const Flow f = flow_of("constant 0");
  const auto super = find_tau0(make_stream(f, conjugates(f, 1.1).s_minus));
  c.truth("supercritical stream has no positive root", !super.tau0.has_value());
}

void endpoint_identities(Checks& c) {
  const auto b = irrotational_base(1.1);
  if (!b.disp.tau0) {
    c.truth("tau0 found", false);
    return;
  }
  const double tau0 = *b.disp.tau0;
  const auto W = solve_W(b.stream, tau0);
  const double up = b.stream.surface_slope();
  const double closed = up / b.stream.d() - 1.0 / up;
  c.near("W'(d) against d^-1 u'(d) - 1/u'(d)", W.slope_right, closed, 1e-5);
  const auto id = check_Wprime0(b.stream, tau0);
  c.below("|W'(0) - d u'(d) w'(d)|", id.discrepancy, 1e-6);
}

void wheeler_pairs(Checks& c) {
  const Flow f = flow_of("constant 0");
  for (double r : {1.05, 1.1, 1.2}) {
    const auto pair = conjugates(f, r);
    const auto hf = to_strip(make_stream(f, pair.s_minus), 33, 129);
    const auto res = wheeler_identity(hf, f, *pair.s_plus, 0.0, 1.0);
    std::ostringstream tag;
    tag << "r = " << r;
    c.below("|LHS| per unit window, " + tag.str(), std::abs(res.lhs) / res.window_length, 1e-6);
    c.truth("RHS == 0, " + tag.str(), res.rhs == 0.0);
    const auto self = wheeler_identity(to_strip(make_stream(f, pair.s_minus), 33, 129), f, pair.s_minus, 0.0, 1.0);
    c.truth("self comparison is exactly zero, " + tag.str(), self.lhs == 0.0 && self.rhs == 0.0 && self.discrepancy == 0.0);
  }
}

const std::vector<double> kAmplitudes{0.02, 0.01, 0.005};

void residual_scaling(Checks& c) {
  const auto b = irrotational_base(1.1);
  double previous = std::numeric_limits<double>::infinity();
  for (double t : kAmplitudes) {
    const double res = surface_bernoulli_residual(build_wave(b.stream, b.disp, t)).max_abs;
    std::ostringstream tag;
    tag << "residual/t at t = " << t << " below previous";
    c.below(tag.str(), res / t, previous);
    previous = res / t;
  }
}

void depth_verdicts(Checks& c) {
  const Flow f = flow_of("constant 0");
  const auto a = analyze(f);
  const auto b = irrotational_base(1.1);
  for (double t : kAmplitudes) {
    const auto rep = check_bounds(f, a, 1.1, build_wave(b.stream, b.disp, t).eta());
    std::ostringstream tag;
    tag << " at t = " << t;
    c.truth("assertion 1 holds" + tag.str(), rep.assertion1.status == Verdict::Holds);
    c.truth("assertion 2 holds" + tag.str(), rep.assertion2.status == Verdict::Holds);
  }
  const auto flat = check_bounds(f, a, 1.1, std::vector<double>(64, conjugates(f, a, 1.1).d_minus));
  c.truth("flat d_minus profile violates assertion 1", flat.assertion1.status == Verdict::Violated);
  c.truth("flat d_minus profile is stream-like", flat.stream_like);
}

void counter_current(Checks& c) {
  const auto sh = shoot_stream(flow_of("constant -2"), -1.0, 10.0);
  c.near("d against (1 + sqrt 5)/2", sh.d(), (1.0 + std::sqrt(5.0)) / 2.0, 1e-9);
  c.near("min u", sh.min_u(), -0.25, 1e-8);
  c.near("y at min u", sh.y_at_min(), 0.5, 1e-6);
  c.truth("sign change", sh.sign_change());
  c.near("r against (6 + sqrt 5)/3", sh.r(), (6.0 + std::sqrt(5.0)) / 3.0, 1e-6);
  c.near("r ~ 2.74536", sh.r(), 2.74536, 1e-5);
}

void cross_path(Checks& c) {
  const std::vector<std::string> pool{"constant 0",   "constant 2",  "constant -2",  "constant 0.7", "poly -3 6",
                                      "poly 1 1",     "poly -2 1",   "poly 0.5 -4 3", "poly 1 -2",   "poly 2 -1 0.5",
                                      "table 0:1 0.3:-2 0.7:0.5 1:2"};
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<std::size_t> pick_flow(0, pool.size() - 1);
  std::uniform_real_distribution<double> pick_ds(0.1, 3.0);
  for (int k = 0; k < 20; ++k) {
    const auto& text = pool[pick_flow(rng)];
    const Flow f = flow_of(text);
    const double s = f.s0() + 0.1 + pick_ds(rng) * 0.999;
    std::ostringstream tag;
    tag.precision(6);
    tag << text << " s=" << s;
    const auto st = make_stream(f, s);
    const auto sh = shoot_stream(f, s, 100.0);
    c.below("shot vs quadrature depth, " + tag.str(), std::abs(sh.d() - st.d()), 1e-8);
    std::uniform_real_distribution<double> pick_y(0.0, st.d());
    double worst = 0.0;
    for (int j = 0; j < 100; ++j) {
      const double y = pick_y(rng);
      worst = std::max(worst, std::abs(st.H(st.u(y)) - y));
    }
    c.below("H(u(y)) = y, " + tag.str(), worst, 1e-8);
  }
}

void hodograph_residuals(Checks& c) {
  for (const auto& text : {"constant 0", "constant 2", "constant -2", "poly -3 6", "poly 1 1", "poly 0.5 -4 3"}) {
    const Flow f = flow_of(text);
    for (double ds : {1.0, 3.0}) {
      const auto hf = to_strip(make_stream(f, f.s0() + ds), 9, 513);
      c.below(std::string("surface Bernoulli residual, ") + text, bernoulli_residual(hf).max_abs, 1e-8);
    }
    // Linear H (omega = 0) leaves only round-off, which does not refine.
    if (std::string(text) == "constant 0") continue;
    const double s = f.s0() + 0.5;
    const auto st = make_stream(f, s);
    const double coarse = field_equation_residual(to_strip(st, 129, 129), f.vorticity()).max_abs;
    const double fine = field_equation_residual(to_strip(st, 257, 257), f.vorticity()).max_abs;
    c.at_least(std::string("field residual refinement ratio, ") + text, coarse / fine, 3.0);
  }
}

struct Criterion {
  const char* name;
  std::function<void(Checks&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"irrotational critical point", irrotational_critical},
      {"constant-vorticity critical values", constant_vorticity_criticals},
      {"stationarity at the critical speed", stationarity},
      {"irrotational conjugate pair at r = 1.1", conjugate_pair},
      {"dispersion root on the subcritical stream", dispersion_root},
      {"endpoint identities of the W problem", endpoint_identities},
      {"integral identity on conjugate streams", wheeler_pairs},
      {"small-amplitude residual scaling", residual_scaling},
      {"depth bounds on built waves", depth_verdicts},
      {"counter-current stream certificate", counter_current},
      {"shooting and quadrature agree", cross_path},
      {"strip residuals on exact streams", hodograph_residuals},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checks c;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    const bool ok = error.empty() && c.passed();
    if (!ok) ++failed;
    std::printf("[%s] %2zu %s (%.2f s): %s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, took.count(),
                c.summary().c_str(), error.empty() ? "" : ("\n      exception: " + error).c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
