#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "triage/analysis.hpp"

using namespace triage;
using cd = std::complex<double>;

namespace {

CoefficientSample coeffs(double alpha, double beta) {
  CoefficientSample s;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

}  // namespace

TEST(Discriminant, Examples) {
  EXPECT_DOUBLE_EQ(discriminant(delta_coefficients(DeltaFamily(1.0), Point(0, 0))), 4.0);
  EXPECT_NEAR(discriminant(delta_coefficients(DeltaFamily(1e-2), Point(0, 0))), 4e-4, 1e-18);
  EXPECT_NEAR(discriminant(delta_coefficients(DeltaFamily(1e-2), Point(0, 0.7))), 4e-4, 1e-15);
}

TEST(Discriminant, ParabolicAndHyperbolicAreRejected) {
  EXPECT_THROW(discriminant(coeffs(1.0, 2.0)), NotElliptic);
  EXPECT_THROW(discriminant(coeffs(1.0, 3.0)), NotElliptic);
  try {
    discriminant(coeffs(1.0, 3.0));
    FAIL();
  } catch (const NotElliptic& e) {
    EXPECT_DOUBLE_EQ(e.discriminant(), -5.0);
  }
  EXPECT_THROW(spectral_parameter(coeffs(0.0, 0.0)), NotElliptic);
}

TEST(SpectralParameter, Examples) {
  const cd a = spectral_parameter(DeltaFamily(1.0), Point(0, 0));
  EXPECT_EQ(a, cd(0.0, 1.0));
  const cd b = spectral_parameter(DeltaFamily(1.0), Point(1, 2));
  EXPECT_DOUBLE_EQ(b.real(), 1.0);
  EXPECT_DOUBLE_EQ(b.imag(), 0.5);
}

TEST(SpectralParameter, QuadraticRootMatchesClosedForm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-0.9, 3.0), uy(-3.0, 3.0), ld(-6.0, 0.5);
  for (int n = 0; n < 3000; ++n) {
    const DeltaFamily fam(std::pow(10.0, ld(rng)));
    const Point p(ux(rng), uy(rng));
    const auto s = delta_coefficients(fam, p);
    const cd root = spectral_parameter(s);
    const cd closed = spectral_parameter(fam, p);
    EXPECT_GT(root.imag(), 0.0);
    // The quadratic formula loses digits as the roots merge: the discriminant
    // cancels down to 4 delta^2 r^2 out of terms of size 4 alpha.
    const double conditioning = s.alpha / (fam.delta() / (1.0 + p.x()));
    EXPECT_LE(std::abs(root - closed), 1e-12 * std::max(1.0, std::abs(closed)) + 1e-15 * conditioning);
    // X^2 + beta X + alpha = 0, relative to the size of the terms
    const cd q = root * root + s.beta * root + s.alpha;
    EXPECT_LE(std::abs(q), 1e-12 * std::max(1.0, s.alpha));
  }
}

TEST(BeltramiCoefficient, Examples) {
  EXPECT_EQ(beltrami_coefficient(cd(0, 1)), cd(0, 0));
  EXPECT_NEAR(std::abs(beltrami_coefficient(spectral_parameter(DeltaFamily(0.5), Point(0, 0)))), 1.0 / 3.0,
              1e-15);
  const double m = std::abs(beltrami_coefficient(spectral_parameter(DeltaFamily(0.1), Point(1, 1))));
  EXPECT_NEAR(m * m, 4.61 / 5.41, 1e-14);
  EXPECT_THROW(beltrami_coefficient(cd(1.0, 0.0)), DomainError);
  EXPECT_THROW(beltrami_coefficient(cd(1.0, -0.5)), DomainError);
}

TEST(BeltramiCoefficient, ModulusIdentityOnRandomPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-0.9, 4.0), uy(-3.0, 3.0), ud(1e-3, 3.0);
  for (int n = 0; n < 5000; ++n) {
    const double d = ud(rng), x = ux(rng), y = uy(rng);
    const double m = std::abs(beltrami_coefficient(spectral_parameter(DeltaFamily(d), Point(x, y))));
    const double t = 1 + x;
    const double want = (y * y + (d - t) * (d - t)) / (y * y + (d + t) * (d + t));
    EXPECT_NEAR(m * m, want, 1e-13);
    EXPECT_LT(m, 1.0);
  }
}

TEST(ConditionNumber, ValuesAndDomain) {
  EXPECT_EQ(condition_number(0.0), 1.0);
  EXPECT_DOUBLE_EQ(condition_number(0.5), 9.0);
  EXPECT_THROW(condition_number(1.0), DomainError);
  EXPECT_THROW(condition_number(-0.1), DomainError);
  double prev = 1.0;
  for (double s = 0.05; s < 1.0; s += 0.05) {
    EXPECT_GT(condition_number(s), prev);
    prev = condition_number(s);
  }
}

TEST(Obstruction, VanishesOnDeltaFamily) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(-0.5, 1.0), uy(-1.0, 1.0);
  for (double d : {1.0, 1e-1, 1e-2, 1e-4, 1e-6}) {
    for (int n = 0; n < 500; ++n) {
      const auto g = obstruction(delta_coefficients(DeltaFamily(d), Point(ux(rng), uy(rng))));
      EXPECT_LE(g.magnitude(), 1e-10) << "delta=" << d;
    }
  }
}

TEST(Obstruction, PerturbedFixtureMatchesSymbolicValues) {
  const PerturbedDeltaField f(DeltaFamily(0.5), 0.1);
  const auto g0 = obstruction(f.sample(Point(0.0, 1.0)));
  EXPECT_NEAR(g0.A, -0.2857142857142857, 1e-14);
  EXPECT_NEAR(g0.B, 0.2857142857142857, 1e-14);
  const auto g1 = obstruction(f.sample(Point(0.3, -0.7)));
  EXPECT_NEAR(g1.A, 0.16706443914081131608, 1e-14);
  EXPECT_NEAR(g1.B, 0.31026252983293534093, 1e-14);
  EXPECT_GT(g1.magnitude(), 0.3);
}

TEST(Obstruction, ConstantCoefficientsAreRigid) {
  const auto g = obstruction(coeffs(2.0, 0.5));
  EXPECT_EQ(g.A, 0.0);
  EXPECT_EQ(g.B, 0.0);
}

TEST(AnalyzePoint, CollectsEverything) {
  const auto s = analyze_point(delta_coefficients(DeltaFamily(0.5), Point(0, 0)));
  EXPECT_DOUBLE_EQ(s.disc, 1.0);
  EXPECT_EQ(s.lambda, cd(0.0, 0.5));
  EXPECT_NEAR(s.abs_mu, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(s.obstr_A, 0.0);
  EXPECT_EQ(s.obstr_B, 0.0);
}

TEST(BurgersResidual, ClosedFormVanishesOnDeltaFamily) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(-0.5, 1.0), uy(-1.0, 1.0);
  for (double d : {1.0, 1e-2, 1e-5}) {
    const DeltaFamilyField f{DeltaFamily(d)};
    for (int n = 0; n < 200; ++n) {
      EXPECT_LE(std::abs(burgers_residual(f, Point(ux(rng), uy(rng)))), 1e-10);
    }
  }
}

TEST(BurgersResidual, FiniteDifferenceVanishesOnDeltaFamily) {
  for (double d : {1.0, 0.1}) {
    const DeltaFamilyField f{DeltaFamily(d)};
    for (double x : {-0.4, 0.0, 0.5, 1.0}) {
      for (double y : {-1.0, -0.2, 0.0, 0.6}) {
        EXPECT_LT(std::abs(burgers_residual(f, Point(x, y), DerivativeMode::FiniteDifference)), 1e-6);
      }
    }
  }
}

TEST(BurgersResidual, PerturbedFixtureBothRoutes) {
  const PerturbedDeltaField f(DeltaFamily(0.5), 0.1);
  const cd r0 = burgers_residual(f, Point(0.0, 1.0));
  EXPECT_NEAR(r0.real(), 0.0, 1e-14);
  EXPECT_NEAR(r0.imag(), 0.1690308509457033, 1e-14);
  const cd r1 = burgers_residual(f, Point(0.3, -0.7));
  EXPECT_NEAR(r1.real(), 0.0, 1e-14);
  EXPECT_NEAR(r1.imag(), 0.15448737310436516657, 1e-14);
  const cd fd = burgers_residual(f, Point(0.3, -0.7), DerivativeMode::FiniteDifference);
  EXPECT_LT(std::abs(fd - r1), 1e-7);
}

TEST(BurgersResidual, ZeroExactlyWhenObstructionIs) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ux(-0.5, 1.0), uy(-1.0, 1.0), ue(0.0, 0.3);
  for (int n = 0; n < 300; ++n) {
    const PerturbedDeltaField f(DeltaFamily(0.7), ue(rng));
    const Point p(ux(rng), uy(rng));
    const double g = obstruction(f.sample(p)).magnitude();
    const double r = std::abs(burgers_residual(f, p));
    EXPECT_EQ(g <= 1e-14, r <= 1e-14);
  }
}

TEST(ScanRegion, DeltaOneOnReferenceRegion) {
  const auto rep = scan_region(DeltaFamily(1.0), reference_region(), GridSpec(201, 201));
  EXPECT_EQ(rep.inf_mu, 0.0);
  EXPECT_NEAR(rep.sup_mu, 0.620174, 5e-7);
  EXPECT_NEAR(rep.kappa, 18.195, 5e-3);
  EXPECT_TRUE(rep.rigid);
  EXPECT_TRUE(rep.closed_form_partials);
  EXPECT_EQ(rep.rigidity_tol, kRigidityTolClosedForm);
  ASSERT_TRUE(rep.delta.has_value());
  EXPECT_EQ(*rep.delta, 1.0);
  EXPECT_EQ(rep.grid.nx % 2, 1U);
}

TEST(ScanRegion, TableValuesAtSmallDelta) {
  const auto rep = scan_region(DeltaFamily(0.01), reference_region(), GridSpec(401, 401));
  EXPECT_NEAR(rep.inf_mu, 0.960784, 5e-7);
  EXPECT_NEAR(rep.sup_mu, 0.992032, 5e-7);
  EXPECT_NEAR(rep.kappa / 62508.0, 1.0, 1e-3);
  EXPECT_TRUE(rep.rigid);
}

TEST(ScanRegion, RefinementChangesLittle) {
  for (double d : {1.0, 0.1, 0.01}) {
    const auto a = scan_region(DeltaFamily(d), reference_region(), GridSpec(101, 101));
    const auto b = scan_region(DeltaFamily(d), reference_region(), GridSpec(201, 201));
    EXPECT_LT(std::abs(a.sup_mu - b.sup_mu), 1e-3);
    EXPECT_LT(std::abs(a.inf_mu - b.inf_mu), 1e-3);
  }
}

TEST(ScanRegion, InfMuMonotoneAsDeltaShrinks) {
  double prev = -1.0;
  for (double d : {1.0, 0.3, 0.1, 0.03, 0.01, 1e-3}) {
    const auto rep = scan_region(DeltaFamily(d), reference_region(), GridSpec(51, 51));
    EXPECT_GE(rep.inf_mu, prev);
    EXPECT_LE(rep.inf_mu, rep.sup_mu);
    prev = rep.inf_mu;
  }
}

TEST(ScanRegion, PerturbedFieldIsNotRigid) {
  const PerturbedDeltaField f(DeltaFamily(0.5), 0.1);
  const auto rep = scan_region(f, reference_region(), GridSpec(41, 41));
  EXPECT_FALSE(rep.rigid);
  EXPECT_GT(std::max(rep.max_abs_A, rep.max_abs_B), 0.1);
  EXPECT_FALSE(rep.delta.has_value());
}

TEST(ScanRegion, CallableFieldUsesLooseTolerance) {
  const CallableField f([](double x, double y) {
    const auto s = delta_coefficients(DeltaFamily(1.0), Point(x, y));
    return CoefficientValues{s.alpha, s.beta};
  });
  const auto rep = scan_region(f, reference_region(), GridSpec(21, 21));
  EXPECT_EQ(rep.rigidity_tol, kRigidityTolFiniteDifference);
  EXPECT_TRUE(rep.rigid);
}

TEST(ScanRegion, HyperbolicNodeIsReported) {
  const CallableField f([](double x, double) { return CoefficientValues{1.0, x > 0.25 ? 3.0 : 0.0}; });
  try {
    scan_region(f, Region(0.0, 1.0, 0.0, 1.0), GridSpec(5, 5), 1e-4);
    FAIL();
  } catch (const NotElliptic& e) {
    ASSERT_TRUE(e.where().has_value());
    EXPECT_GT(e.where()->first, 0.25);
  }
}
