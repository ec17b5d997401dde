#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vortwave/bernoulli.hpp"
#include "vortwave/dispersion.hpp"

using namespace vortwave;

namespace {

Flow flow_of(const std::string& text) { return Flow(parse_vorticity(text)); }

double coth(double x) { return 1.0 / std::tanh(x); }

// Subcritical irrotational conjugate at r = 1.1 from the closed-form head.
double s_plus_oracle() {
  return oracle::bisect([](double s) { return oracle::head_const(0.0, s) - 1.1; }, 0.1, 1.0);
}

}  // namespace

TEST(Gamma, LinearAtZeroWavenumber) {
  const auto st = make_stream(flow_of("constant 0"), 0.8);
  const auto g = gamma_bvp(st, 0.0);
  EXPECT_NEAR(g.slope_right, 1.0 / st.d(), 1e-11);
  EXPECT_NEAR(g.bvp.value(0.5 * st.d()), 0.5, 1e-11);
  EXPECT_FALSE(g.formal);
}

TEST(Gamma, HyperbolicCotangent) {
  const auto st = make_stream(flow_of("constant 0"), 1.0);
  EXPECT_NEAR(gamma_bvp(st, 1.0).slope_right, coth(1.0), 1e-10);
  EXPECT_NEAR(gamma_slope(st, 1.0), coth(1.0), 1e-10);
}

TEST(Gamma, SubcriticalIrrotationalStream) {
  const auto st = make_stream(flow_of("constant 0"), s_plus_oracle());
  const double expected = 1.92 * coth(1.92 * st.d());
  EXPECT_NEAR(gamma_bvp(st, 1.92).slope_right, expected, 1e-10);
  EXPECT_NEAR(expected, 1.93841, 1e-5);
}

TEST(Gamma, RiccatiPathMatchesLinearShot) {
  for (const auto& text : {"constant -2", "poly -3 6", "poly 1 1", "poly 0.5 -4 3"}) {
    const Flow f = flow_of(text);
    const auto st = make_stream(f, f.s0() + 0.6);
    for (double tau : {0.0, 0.3, 1.0, 4.0, 15.0}) {
      const double a = gamma_bvp(st, tau).slope_right;
      EXPECT_NEAR(gamma_slope(st, tau), a, 1e-8 * std::max(1.0, std::abs(a))) << text << " tau=" << tau;
    }
  }
}

TEST(Gamma, NegativeWavenumberIsRejected) {
  const auto st = make_stream(flow_of("constant 0"), 1.0);
  EXPECT_THROW(gamma_bvp(st, -1.0), DomainError);
  EXPECT_THROW(sigma(st, -0.5), DomainError);
}

TEST(Gamma, TableVorticityIsFormal) {
  const Flow f = flow_of("table 0:1 0.5:-1 1:2");
  const auto st = make_stream(f, f.s0() + 0.5);
  EXPECT_TRUE(gamma_bvp(st, 1.0).formal);
  const auto res = find_tau0(st);
  ASSERT_FALSE(res.warnings.empty());
  EXPECT_NE(res.warnings.front().find("formal"), std::string::npos);
}

TEST(Sigma, Examples) {
  const auto critical = make_stream(flow_of("constant 0"), 1.0);
  EXPECT_NEAR(sigma(critical, 1e-6), 0.0, 1e-10);

  const double sp = s_plus_oracle();
  const auto sub = make_stream(flow_of("constant 0"), sp);
  EXPECT_LE(std::abs(sigma(sub, 1.92)), 2e-3);

  const auto shallow = make_stream(flow_of("constant 0"), 2.0);
  EXPECT_NEAR(sigma(shallow, 1.0), 2.0 * coth(0.5) - 0.5, 1e-10);
}

TEST(Sigma, IrrotationalClosedForm) {
  for (double s : {0.6, 0.9, 1.5}) {
    const auto st = make_stream(flow_of("constant 0"), s);
    for (double tau = 0.1; tau <= 20.0; tau += 0.37) {
      const double exact = oracle::sigma_irrotational(s, tau);
      EXPECT_NEAR(sigma(st, tau), exact, 1e-8 * std::max(1.0, std::abs(exact))) << "s=" << s << " tau=" << tau;
    }
  }
}

TEST(Sigma, AssumptionOneFailure) {
  const Flow f = flow_of("constant 2");
  const auto st = make_stream(f, f.s0());
  EXPECT_THROW(sigma(st, 1.0), AssumptionError);
  const auto res = find_tau0(st);
  EXPECT_FALSE(res.assumption_I);
  EXPECT_FALSE(res.tau0.has_value());
}

TEST(FindTau0, SubcriticalIrrotational) {
  const double sp = s_plus_oracle();
  const auto st = make_stream(flow_of("constant 0"), sp);
  const auto res = find_tau0(st);
  const double expected = oracle::bisect([sp](double t) { return oracle::sigma_irrotational(sp, t); }, 0.5, 5.0);
  ASSERT_TRUE(res.tau0.has_value());
  EXPECT_NEAR(*res.tau0, expected, 1e-8);
  EXPECT_NEAR(*res.tau0, 1.920, 1e-3);
  EXPECT_LT(std::abs(res.sigma_at_tau0), 1e-9);
  EXPECT_TRUE(res.assumption_I);
  EXPECT_TRUE(res.assumption_II);
  EXPECT_FALSE(res.resonant_multiple.has_value());
  EXPECT_EQ(res.multiple_sigmas.size(), 9u);
  for (double v : res.multiple_sigmas) EXPECT_GT(std::abs(v), 1e-6);
}

TEST(FindTau0, SupercriticalHasNoRoot) {
  const auto pair = conjugates(flow_of("constant 0"), 1.1);
  const auto res = find_tau0(make_stream(flow_of("constant 0"), pair.s_minus));
  EXPECT_FALSE(res.tau0.has_value());
  EXPECT_FALSE(res.assumption_II);
  EXPECT_FALSE(res.warnings.empty());
}

TEST(FindTau0, CriticalStreamIsDegenerate) {
  const auto res = find_tau0(make_stream(flow_of("constant 0"), 1.0));
  EXPECT_FALSE(res.tau0.has_value());
  EXPECT_FALSE(res.assumption_II);
}

TEST(FindTau0, ScanIsContinuous) {
  const double s = s_plus_oracle();
  const auto res = find_tau0(make_stream(flow_of("constant 0"), s));
  // d sigma / d tau lies in [0, s] for the irrotational closed form.
  for (std::size_t i = 0; i + 1 < res.taus.size(); ++i) {
    ASSERT_TRUE(std::isfinite(res.sigmas[i]));
    const double slope = (res.sigmas[i + 1] - res.sigmas[i]) / (res.taus[i + 1] - res.taus[i]);
    EXPECT_GE(slope, -0.01 * s);
    EXPECT_LE(slope, 1.01 * s);
  }
  EXPECT_NEAR(res.taus.back(), 50.0, 1e-12);
}

TEST(FindTau0, RotationalRootIsPolished) {
  for (const auto& text : {"constant -2", "poly -3 6", "poly 1 1"}) {
    const Flow f = flow_of(text);
    const auto a = analyze(f);
    const auto pair = conjugates(f, a, a.r_c + 0.01);
    ASSERT_TRUE(pair.s_plus.has_value()) << text;
    const auto res = find_tau0(make_stream(f, *pair.s_plus));
    ASSERT_TRUE(res.tau0.has_value()) << text;
    EXPECT_LT(std::abs(res.sigma_at_tau0), 1e-9) << text;
    EXPECT_GT(*res.tau0, 0.0);
  }
}

TEST(FindTau0, SmallSurfaceShearPushesRootPastDefaultScan) {
  // u'(d) ~ 0.068: sigma ~ u'(d) tau - 1/u'(d) first vanishes near tau ~ 200.
  const Flow f = flow_of("poly 1 1");
  const auto a = analyze(f);
  const auto st = make_stream(f, *conjugates(f, a, a.r_c + 0.05).s_plus);
  EXPECT_FALSE(find_tau0(st).tau0.has_value());
  DispersionSettings wide;
  wide.tau_max = 400.0;
  wide.step = 0.5;
  wide.K = 2;
  const auto res = find_tau0(st, wide);
  ASSERT_TRUE(res.tau0.has_value());
  EXPECT_GT(*res.tau0, 50.0);
  EXPECT_LT(std::abs(res.sigma_at_tau0), 1e-9);
}

TEST(FindTau0, SettingsAreValidated) {
  const auto st = make_stream(flow_of("constant 0"), 0.8);
  DispersionSettings bad;
  bad.step = 0.0;
  EXPECT_THROW(find_tau0(st, bad), ValidationError);
  bad = {};
  bad.tau_max = 0.0;
  EXPECT_THROW(find_tau0(st, bad), ValidationError);
}

TEST(FindTau0, RootBeyondScanIsNotFound) {
  DispersionSettings set;
  set.tau_max = 1.0;
  const auto res = find_tau0(make_stream(flow_of("constant 0"), s_plus_oracle()), set);
  EXPECT_FALSE(res.tau0.has_value());
  EXPECT_EQ(res.settings.tau_max, 1.0);
}
