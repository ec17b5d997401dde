#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vortwave/bernoulli.hpp"

using namespace vortwave;

namespace {

Flow flow_of(const std::string& text) { return Flow(parse_vorticity(text)); }

// Three polynomial cases plus the constants used throughout.
const std::vector<std::string> kFlows{"constant 0", "constant 2", "constant -2", "poly -3 6", "poly 1 1",
                                      "poly -2 1", "poly 0.5 -4 3"};

}  // namespace

TEST(Head, Examples) {
  EXPECT_NEAR(head(flow_of("constant 0"), 1.0), 1.0, 1e-14);
  EXPECT_NEAR(head(flow_of("constant 0"), 2.0), 5.0 / 3.0, 1e-14);
  EXPECT_NEAR(head(flow_of("constant 2"), 2.0), 2.0 / 3.0, 1e-12);
  EXPECT_THROW(head(flow_of("constant 2"), 1.5), DomainError);
}

TEST(Head, DerivativeMatchesFiniteDifference) {
  for (const auto& text : kFlows) {
    const Flow f = flow_of(text);
    const double s = f.s0() + 0.8;
    const double h = 1e-5;
    const double fd = (head(f, s + h) - head(f, s - h)) / (2.0 * h);
    EXPECT_NEAR(head_derivative(f, s), fd, 1e-7) << text;
  }
}

TEST(Head, GrowsWithoutBound) {
  for (const auto& text : kFlows) EXPECT_GT(head(flow_of(text), 1e3), 1e5) << text;
}

TEST(FindCritical, Irrotational) {
  const auto cp = find_critical(flow_of("constant 0"));
  const auto grid = oracle::grid_min([](double s) { return oracle::head_const(0.0, s); }, 0.5, 3.0);
  EXPECT_NEAR(cp.s_c, grid.first, 1e-5);
  EXPECT_NEAR(cp.s_c, 1.0, 1e-8);
  EXPECT_NEAR(cp.r_c, 1.0, 1e-8);
}

TEST(FindCritical, ConstantVorticity) {
  const auto cp = find_critical(flow_of("constant 2"));
  const auto grid = oracle::grid_min([](double s) { return oracle::head_const(2.0, s); }, 2.0, 4.0);
  EXPECT_NEAR(cp.s_c, grid.first, 1e-4);
  EXPECT_NEAR(cp.r_c, grid.second, 1e-10);
  EXPECT_NEAR(cp.s_c, 2.0399, 1e-4);
  EXPECT_NEAR(cp.r_c, 0.59987, 1e-5);
}

TEST(FindCritical, StationarityByIndependentQuadrature) {
  for (const auto& text : kFlows) {
    const Flow f = flow_of(text);
    const auto cp = find_critical(f);
    const auto& dist = f.vorticity();
    const double s = cp.s_c;
    const double phi1 = oracle::simpson([&](double t) { return std::pow(s * s - 2.0 * dist.Omega(t), -1.5); }, 0.0, 1.0);
    EXPECT_LT(std::abs(phi1 - 1.0), 1e-8) << text;
    EXPECT_LT(std::abs(cp.stationarity_gap), 1e-8) << text;
    EXPECT_GT(cp.s_c, f.s0()) << text;
    EXPECT_NEAR(cp.d_c, depth(f, cp.s_c), 1e-12) << text;
  }
}

TEST(SecondCritical, Examples) {
  const auto a0 = analyze(flow_of("constant 0"));
  EXPECT_TRUE(std::isinf(a0.d0));
  EXPECT_FALSE(a0.r0.has_value());
  EXPECT_FALSE(a0.d0_finite);

  const auto a2 = analyze(flow_of("constant 2"));
  EXPECT_NEAR(a2.d0, 1.0, 1e-10);
  ASSERT_TRUE(a2.r0.has_value());
  EXPECT_NEAR(*a2.r0, 2.0 / 3.0, 1e-10);
  EXPECT_EQ(a2.s0, 2.0);

  const auto am2 = analyze(flow_of("constant -2"));
  EXPECT_NEAR(am2.d0, 1.0, 1e-10);
  ASSERT_TRUE(am2.r0.has_value());
  EXPECT_NEAR(*am2.r0, 2.0, 1e-10);
}

TEST(SecondCritical, ExceedsCriticalHead) {
  for (const auto& text : kFlows) {
    const auto a = analyze(flow_of(text));
    if (!a.r0) continue;
    EXPECT_GT(*a.r0 - a.r_c, 1e-10) << text;
  }
}

TEST(Conjugates, Irrotational) {
  const auto pair = conjugates(flow_of("constant 0"), 1.1);
  auto g = [](double s) { return oracle::head_const(0.0, s) - 1.1; };
  const double sp = oracle::bisect(g, 0.1, 1.0);
  const double sm = oracle::bisect(g, 1.0, 3.0);
  ASSERT_TRUE(pair.s_plus.has_value());
  EXPECT_EQ(pair.regime, Regime::SubcriticalPair);
  EXPECT_NEAR(*pair.s_plus, sp, 1e-10);
  EXPECT_NEAR(pair.s_minus, sm, 1e-10);
  EXPECT_NEAR(*pair.d_plus, 1.0 / sp, 1e-10);
  EXPECT_NEAR(pair.d_minus, 1.0 / sm, 1e-10);
  EXPECT_NEAR(*pair.s_plus, 0.71842, 1e-5);
  EXPECT_NEAR(pair.s_minus, 1.34751, 1e-5);
  EXPECT_NEAR(*pair.d_plus, 1.39193, 1e-5);
  EXPECT_NEAR(pair.d_minus, 0.74211, 1e-5);
}

TEST(Conjugates, CriticalRegime) {
  const auto pair = conjugates(flow_of("constant 0"), 1.0);
  EXPECT_EQ(pair.regime, Regime::Critical);
  ASSERT_TRUE(pair.s_plus.has_value());
  EXPECT_NEAR(*pair.s_plus, 1.0, 1e-8);
  EXPECT_NEAR(pair.s_minus, 1.0, 1e-8);
}

TEST(Conjugates, OnlySupercriticalAboveSecondCritical) {
  const auto pair = conjugates(flow_of("constant 2"), 1.0);
  EXPECT_EQ(pair.regime, Regime::OnlySupercritical);
  EXPECT_FALSE(pair.s_plus.has_value());
  const double sm = oracle::bisect([](double s) { return oracle::head_const(2.0, s) - 1.0; }, 2.1, 5.0);
  EXPECT_NEAR(pair.s_minus, sm, 1e-10);
  EXPECT_NEAR(pair.d_minus, oracle::depth_const(2.0, sm), 1e-10);
}

TEST(Conjugates, BelowCriticalQuotesCriticalHead) {
  try {
    conjugates(flow_of("constant 0"), 0.9);
    FAIL() << "expected NoSolutionError";
  } catch (const NoSolutionError& e) {
    EXPECT_NEAR(e.r_c, 1.0, 1e-8);
  }
}

TEST(Conjugates, HeadsOrderingAndDepths) {
  for (const auto& text : kFlows) {
    const Flow f = flow_of(text);
    const auto a = analyze(f);
    for (double dr : {0.02, 0.3, 2.0}) {
      const double r = a.r_c + dr;
      const auto pair = conjugates(f, a, r);
      EXPECT_NEAR(head(f, pair.s_minus), r, 1e-9) << text;
      EXPECT_GT(pair.s_minus, a.s_c) << text;
      EXPECT_LT(pair.d_minus, a.d_c) << text;
      if (pair.s_plus) {
        EXPECT_NEAR(head(f, *pair.s_plus), r, 1e-9) << text;
        EXPECT_LT(a.s0, *pair.s_plus) << text;
        EXPECT_LT(*pair.s_plus, a.s_c) << text;
        EXPECT_GT(*pair.d_plus, a.d_c) << text;
      } else {
        ASSERT_TRUE(a.r0.has_value()) << text;
        EXPECT_GE(r, *a.r0 - 1e-12) << text;
      }
      if (f.condition() == Condition::I) {
        EXPECT_EQ(pair.regime, Regime::SubcriticalPair) << text;
      }
    }
  }
}
