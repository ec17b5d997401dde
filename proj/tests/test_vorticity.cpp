#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "vortwave/vorticity.hpp"

using namespace vortwave;

namespace {

std::vector<VorticityDistribution> samples() {
  return {VorticityDistribution::constant(0.0),
          VorticityDistribution::constant(2.0),
          VorticityDistribution::constant(-2.0),
          VorticityDistribution::polynomial({-3.0, 6.0}),
          VorticityDistribution::polynomial({1.0, 1.0}),
          VorticityDistribution::polynomial({0.5, -4.0, 3.0}),
          VorticityDistribution::table({0.0, 0.3, 0.7, 1.0}, {1.0, -2.0, 0.5, 2.0})};
}

}  // namespace

TEST(Omega, Examples) {
  EXPECT_EQ(VorticityDistribution::constant(0.0).omega(0.5), 0.0);
  EXPECT_EQ(VorticityDistribution::constant(2.0).omega(0.9), 2.0);
  EXPECT_EQ(VorticityDistribution::polynomial({-3.0, 6.0}).omega(0.5), 0.0);
}

TEST(Omega, AntiderivativeExamples) {
  EXPECT_DOUBLE_EQ(VorticityDistribution::constant(2.0).Omega(0.5), 1.0);
  EXPECT_DOUBLE_EQ(VorticityDistribution::constant(-2.0).Omega(1.0), -2.0);
  for (const auto& d : samples()) EXPECT_EQ(d.Omega(0.0), 0.0) << d.describe();
}

TEST(Omega, OutsideUnitIntervalIsDomainError) {
  const auto d = VorticityDistribution::constant(1.0);
  EXPECT_THROW(d.omega(-0.1), DomainError);
  EXPECT_THROW(d.Omega(1.5), DomainError);
}

TEST(Omega, DerivativeOfAntiderivative) {
  const double h = 1e-4;
  for (const auto& d : samples()) {
    for (int k = 1; k < 100; ++k) {
      const double t = 0.01 * k;
      // Skip table breakpoints, where omega has a kink.
      if (d.representation() == Representation::Table && (std::abs(t - 0.3) < 2 * h || std::abs(t - 0.7) < 2 * h)) {
        continue;
      }
      const double fd = (d.Omega(t + h) - d.Omega(t - h)) / (2.0 * h);
      EXPECT_NEAR(fd, d.omega(t), 1e-6) << d.describe() << " tau=" << t;
    }
  }
}

TEST(Omega, TableOfLinearMatchesPolynomialAtBreakpoints) {
  const auto poly = VorticityDistribution::polynomial({-3.0, 6.0});
  std::vector<double> knots;
  std::vector<double> values;
  for (int k = 0; k <= 8; ++k) {
    knots.push_back(k / 8.0);
    values.push_back(poly.omega(k / 8.0));
  }
  const auto table = VorticityDistribution::table(knots, values);
  for (double t : knots) EXPECT_EQ(table.Omega(t), poly.Omega(t)) << t;
}

TEST(Omega, TableValidation) {
  EXPECT_THROW(VorticityDistribution::table({0.0, 0.5}, {1.0, 2.0}), ValidationError);
  EXPECT_THROW(VorticityDistribution::table({0.0, 0.6, 0.4, 1.0}, {1.0, 2.0, 3.0, 4.0}), ValidationError);
  EXPECT_THROW(VorticityDistribution::table({0.0, 1.0}, {1.0}), ValidationError);
  EXPECT_THROW(VorticityDistribution::polynomial({}), ValidationError);
}

TEST(S0, Examples) {
  EXPECT_EQ(compute_s0(VorticityDistribution::constant(0.0)), 0.0);
  EXPECT_DOUBLE_EQ(compute_s0(VorticityDistribution::constant(2.0)), 2.0);
  EXPECT_EQ(compute_s0(VorticityDistribution::constant(-2.0)), 0.0);
}

TEST(S0, NonNegativeAndZeroExactlyWhenMaxOmegaNonPositive) {
  for (const auto& d : samples()) {
    const double s0 = compute_s0(d);
    EXPECT_GE(s0, 0.0);
    EXPECT_EQ(s0 == 0.0, max_Omega(d) <= 0.0) << d.describe();
  }
}

TEST(S0, InteriorMaximumOfPolynomial) {
  // omega = 1 - 2 tau: Omega = tau - tau^2 peaks at 1/2 with value 1/4.
  const auto d = VorticityDistribution::polynomial({1.0, -2.0});
  EXPECT_DOUBLE_EQ(compute_s0(d), std::sqrt(0.5));
  const auto c = classify(d);
  EXPECT_EQ(c.condition, Condition::I);
  ASSERT_EQ(c.maximizers.size(), 1u);
  EXPECT_NEAR(c.maximizers[0], 0.5, 1e-14);
}

TEST(Classify, Examples) {
  const auto c2 = classify(VorticityDistribution::constant(2.0));
  EXPECT_EQ(c2.condition, Condition::III);
  EXPECT_DOUBLE_EQ(c2.s0, 2.0);
  EXPECT_TRUE(c2.d0_finite);

  const auto cm2 = classify(VorticityDistribution::constant(-2.0));
  EXPECT_EQ(cm2.condition, Condition::II);
  EXPECT_EQ(cm2.s0, 0.0);
  EXPECT_TRUE(cm2.d0_finite);

  const auto c0 = classify(VorticityDistribution::constant(0.0));
  EXPECT_EQ(c0.condition, Condition::I);
  EXPECT_EQ(c0.s0, 0.0);
  EXPECT_FALSE(c0.d0_finite);
}

TEST(Classify, ZeroNetVorticityExtraClause) {
  // Omega(1) = 0 with omega(0) < 0 and omega(1) > 0.
  EXPECT_EQ(classify(VorticityDistribution::polynomial({-3.0, 6.0})).condition, Condition::III);
  // Omega(1) = 0 but omega(0) > 0: the maximum is interior, class (i).
  EXPECT_EQ(classify(VorticityDistribution::polynomial({3.0, -6.0})).condition, Condition::I);
}

TEST(Classify, PredicatesAreExclusive) {
  for (const auto& d : samples()) {
    const auto c = classify(d);
    const bool ii = c.omega_at_0 < 0.0 && c.maximizers.size() == 1 && c.maximizers[0] == 0.0;
    const bool iii = c.omega_at_1 > 0.0 && c.maximizers.size() == 1 && c.maximizers[0] == 1.0;
    EXPECT_FALSE(ii && iii) << d.describe();
    EXPECT_EQ(c.condition == Condition::II, ii) << d.describe();
    if (c.Omega_at_1 != 0.0) {
      EXPECT_EQ(c.condition == Condition::III, iii) << d.describe();
    }
    EXPECT_EQ(c.d0_finite, c.condition != Condition::I);
  }
}

TEST(Classify, NearTieIsAmbiguous) {
  // Omega(1) = 1e-14 against Omega(0) = 0: inside the 1e-12 margin.
  EXPECT_THROW(classify(VorticityDistribution::polynomial({-3.0, 6.0 + 2e-14})), AmbiguityError);
}

TEST(Parse, RoundTripThroughDescribe) {
  for (const auto& d : samples()) {
    const auto back = parse_vorticity(d.describe());
    for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      EXPECT_EQ(back.omega(t), d.omega(t)) << d.describe();
      EXPECT_EQ(back.Omega(t), d.Omega(t)) << d.describe();
    }
  }
}

TEST(Parse, Forms) {
  EXPECT_EQ(parse_vorticity("constant 2").omega(0.3), 2.0);
  EXPECT_EQ(parse_vorticity("poly -3 6").omega(1.0), 3.0);
  EXPECT_EQ(parse_vorticity("table 0:1 0.5:3 1:1").omega(0.25), 2.0);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_vorticity("sine 1"), ValidationError);
  EXPECT_THROW(parse_vorticity("constant"), ValidationError);
  EXPECT_THROW(parse_vorticity("constant 1 2"), ValidationError);
  EXPECT_THROW(parse_vorticity("poly 1 x"), ValidationError);
  EXPECT_THROW(parse_vorticity("table 0:1 1"), ValidationError);
}
