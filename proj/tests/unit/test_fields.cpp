#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "triage/fields.hpp"

using namespace triage;

namespace {

// Independent transcription of the closed-form coefficients and partials.
CoefficientSample direct_formulas(double d, double x, double y) {
  const double s = y * y + d * d;
  const double t = 1.0 + x;
  return {s / (t * t), -2 * y / t, -2 * s / (t * t * t), 2 * y / (t * t), 2 * y / (t * t), -2 / t};
}

double max_partial_error(const CoefficientSample& a, const CoefficientSample& b) {
  return std::max({std::abs(a.alpha_x - b.alpha_x), std::abs(a.alpha_y - b.alpha_y),
                   std::abs(a.beta_x - b.beta_x), std::abs(a.beta_y - b.beta_y)});
}

CallableField bare_delta_field(double delta) {
  return CallableField([delta](double x, double y) {
    const auto s = direct_formulas(delta, x, y);
    return CoefficientValues{s.alpha, s.beta};
  });
}

}  // namespace

TEST(Point, RejectsPointsOutsideHalfPlane) {
  EXPECT_THROW(Point(-1.0, 0.0), DomainError);
  EXPECT_THROW(Point(-2.0, 0.0), DomainError);
  EXPECT_THROW(Point(-1.0 + 1e-13, 0.0), DomainError);
  EXPECT_THROW(Point(std::nan(""), 0.0), DomainError);
  EXPECT_NO_THROW(Point(-1.0 + 1e-11, 5.0));
  EXPECT_NO_THROW(Point(0.0, -1e6));
}

TEST(DeltaFamily, RequiresPositiveDelta) {
  EXPECT_THROW(DeltaFamily(0.0), DomainError);
  EXPECT_THROW(DeltaFamily(-0.1), DomainError);
  EXPECT_THROW(DeltaFamily{INFINITY}, DomainError);
  EXPECT_DOUBLE_EQ(DeltaFamily(1e-10).delta(), 1e-10);
}

TEST(Region, EnforcesOrderingAndDomain) {
  EXPECT_THROW(Region(-1.0, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(Region(0.5, 0.5, 0.0, 1.0), DomainError);
  EXPECT_THROW(Region(0.0, 1.0, 1.0, -1.0), DomainError);
  const Region k = reference_region();
  EXPECT_EQ(k, Region(-0.5, 1.0, -1.0, 1.0));
  EXPECT_TRUE(k.contains(Region(0.0, 0.5, -0.5, 0.5)));
  EXPECT_FALSE(k.contains(Region(0.0, 1.5, -0.5, 0.5)));
}

TEST(GridSpec, NeedsTwoNodesPerAxis) {
  EXPECT_THROW(GridSpec(1, 5), DomainError);
  EXPECT_THROW(GridSpec(5, 0), DomainError);
}

TEST(DeltaCoefficients, ValuesAtOriginForDeltaOne) {
  const auto s = delta_coefficients(DeltaFamily(1.0), Point(0.0, 0.0));
  EXPECT_EQ(s.alpha, 1.0);
  EXPECT_EQ(s.beta, 0.0);
  EXPECT_EQ(s.alpha_x, -2.0);
  EXPECT_EQ(s.alpha_y, 0.0);
  EXPECT_EQ(s.beta_x, 0.0);
  EXPECT_EQ(s.beta_y, -2.0);
}

TEST(DeltaCoefficients, ValuesAtUnitHeight) {
  const auto s = delta_coefficients(DeltaFamily(1.0), Point(0.0, 1.0));
  EXPECT_EQ(s.alpha, 2.0);
  EXPECT_EQ(s.beta, -2.0);
}

TEST(DeltaCoefficients, OddSymmetryInY) {
  for (double d : {1.0, 0.1, 1e-6}) {
    for (double x : {-0.9, 0.0, 0.37, 4.0}) {
      const auto s = delta_coefficients(DeltaFamily(d), Point(x, 0.0));
      EXPECT_EQ(s.beta, 0.0);
      EXPECT_EQ(s.alpha_y, 0.0);
    }
  }
}

TEST(DeltaCoefficients, MatchesDirectFormulasAtRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-0.95, 3.0), uy(-3.0, 3.0), ld(-8.0, 0.0);
  for (int n = 0; n < 2000; ++n) {
    const double d = std::pow(10.0, ld(rng));
    const double x = ux(rng), y = uy(rng);
    const auto got = delta_coefficients(DeltaFamily(d), Point(x, y));
    const auto want = direct_formulas(d, x, y);
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(b)) * 10; };
    EXPECT_TRUE(close(got.alpha, want.alpha));
    EXPECT_TRUE(close(got.beta, want.beta));
    EXPECT_TRUE(close(got.alpha_x, want.alpha_x));
    EXPECT_TRUE(close(got.alpha_y, want.alpha_y));
    EXPECT_TRUE(close(got.beta_x, want.beta_x));
    EXPECT_TRUE(close(got.beta_y, want.beta_y));
  }
}

TEST(DeltaCoefficients, DiscriminantIdentityAndSignInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.99, 5.0), uy(-4.0, 4.0), ud(1e-3, 2.0);
  for (int n = 0; n < 5000; ++n) {
    const double d = ud(rng), x = ux(rng), y = uy(rng);
    const auto s = delta_coefficients(DeltaFamily(d), Point(x, y));
    const double disc = 4 * s.alpha - s.beta * s.beta;
    const double want = 4 * d * d / ((1 + x) * (1 + x));
    EXPECT_GT(disc, 0.0);
    EXPECT_NEAR(disc, want, 1e-12 * std::max(1.0, 4 * s.alpha));
    EXPECT_GT(s.alpha, 0.0);
    EXPECT_LE(s.beta * y, 0.0);
  }
}

TEST(PerturbedDeltaField, ShiftsAlphaOnly) {
  const DeltaFamily fam(0.5);
  const PerturbedDeltaField pert(fam, 0.1);
  const Point p(0.2, -0.4);
  const auto a = delta_coefficients(fam, p);
  const auto b = pert.sample(p);
  EXPECT_DOUBLE_EQ(b.alpha, a.alpha + 0.1);
  EXPECT_EQ(b.beta, a.beta);
  EXPECT_EQ(b.alpha_x, a.alpha_x);
  EXPECT_EQ(b.beta_y, a.beta_y);
  EXPECT_TRUE(pert.closed_form_partials());
  EXPECT_THROW(PerturbedDeltaField(fam, -1.0), DomainError);
}

TEST(GridPoints, UnitSquareCorners) {
  const auto pts = grid_points(Region(0, 1, 0, 1), GridSpec(2, 2));
  ASSERT_EQ(pts.size(), 4U);
  EXPECT_EQ(pts[0].x(), 0.0);
  EXPECT_EQ(pts[0].y(), 0.0);
  EXPECT_EQ(pts[1].x(), 1.0);
  EXPECT_EQ(pts[1].y(), 0.0);
  EXPECT_EQ(pts[2].x(), 0.0);
  EXPECT_EQ(pts[2].y(), 1.0);
  EXPECT_EQ(pts[3].x(), 1.0);
  EXPECT_EQ(pts[3].y(), 1.0);
}

TEST(GridPoints, RowMajorOverReferenceRegion) {
  const auto pts = grid_points(reference_region(), GridSpec(4, 5));
  ASSERT_EQ(pts.size(), 20U);
  EXPECT_EQ(pts.front().x(), -0.5);
  EXPECT_EQ(pts.front().y(), -1.0);
  EXPECT_EQ(pts[1].x(), 0.0);  // x varies fastest
  EXPECT_EQ(pts[1].y(), -1.0);
  EXPECT_EQ(pts.back().x(), 1.0);
  EXPECT_EQ(pts.back().y(), 1.0);
}

TEST(GridPoints, BoundingBoxIsRegionAndDeterministic) {
  const Region r(-0.3, 2.7, -1.1, 0.9);
  const auto a = grid_points(r, GridSpec(37, 53));
  const auto b = grid_points(r, GridSpec(37, 53));
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (std::size_t n = 0; n < a.size(); ++n) {
    EXPECT_EQ(a[n].x(), b[n].x());
    EXPECT_EQ(a[n].y(), b[n].y());
    xmin = std::min(xmin, a[n].x());
    xmax = std::max(xmax, a[n].x());
    ymin = std::min(ymin, a[n].y());
    ymax = std::max(ymax, a[n].y());
  }
  EXPECT_EQ(xmin, r.x_min());
  EXPECT_EQ(xmax, r.x_max());
  EXPECT_EQ(ymin, r.y_min());
  EXPECT_EQ(ymax, r.y_max());
}

TEST(AlignToOrigin, ReferenceRegionGetsNodeAtOrigin) {
  const Region k = reference_region();
  const GridSpec g = align_to_origin(k, GridSpec(2001, 2001));
  EXPECT_EQ(g.nx, 2005U);
  EXPECT_EQ(g.ny, 2001U);
  EXPECT_EQ(g.nx % 2, 1U);

  const auto pts = grid_points(k, g);
  const bool has_origin =
      std::any_of(pts.begin(), pts.end(), [](const Point& p) { return p.x() == 0.0 && p.y() == 0.0; });
  EXPECT_TRUE(has_origin);
}

TEST(AlignToOrigin, SmallGridAndUntouchedAxes) {
  const Region k = reference_region();
  const GridSpec g = align_to_origin(k, GridSpec(4, 5));
  const Lattice lat(k, g);
  bool x0 = false, y0 = false;
  for (std::size_t i = 0; i < lat.nx(); ++i) x0 |= lat.x(i) == 0.0;
  for (std::size_t j = 0; j < lat.ny(); ++j) y0 |= lat.y(j) == 0.0;
  EXPECT_TRUE(x0);
  EXPECT_TRUE(y0);

  const Region positive(0.5, 2.0, 1.0, 3.0);
  EXPECT_EQ(align_to_origin(positive, GridSpec(10, 12)), GridSpec(10, 12));
}

TEST(NumericPartials, MatchClosedFormAtOrigin) {
  const auto bare = bare_delta_field(1.0);
  const Point p(0.0, 0.0);
  const auto fd = numeric_partials(bare, p, 1e-4);
  const auto exact = delta_coefficients(DeltaFamily(1.0), p);
  EXPECT_EQ(fd.alpha, exact.alpha);
  EXPECT_EQ(fd.beta, exact.beta);
  // Truncation is h^2/6 times a third derivative of size O(10).
  EXPECT_LT(max_partial_error(fd, exact), 1e-7);
}

TEST(NumericPartials, ConstantFieldHasZeroPartials) {
  const CallableField constant([](double, double) { return CoefficientValues{1.0, 0.0}; });
  const auto s = numeric_partials(constant, Point(0.3, -2.0), 1e-3);
  EXPECT_EQ(s.alpha_x, 0.0);
  EXPECT_EQ(s.alpha_y, 0.0);
  EXPECT_EQ(s.beta_x, 0.0);
  EXPECT_EQ(s.beta_y, 0.0);
  EXPECT_FALSE(constant.closed_form_partials());
}

TEST(NumericPartials, SecondOrderConvergence) {
  const auto bare = bare_delta_field(0.5);
  const Point p(0.3, 0.7);
  const auto exact = delta_coefficients(DeltaFamily(0.5), p);
  const double e1 = max_partial_error(numeric_partials(bare, p, 1e-2), exact);
  const double e2 = max_partial_error(numeric_partials(bare, p, 5e-3), exact);
  const double e3 = max_partial_error(numeric_partials(bare, p, 2.5e-3), exact);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
  const double slope = std::log(e1 / e3) / std::log(4.0);
  EXPECT_NEAR(slope, 2.0, 0.1);
}

TEST(NumericPartials, DefaultSampleUsesDefaultStep) {
  const auto bare = bare_delta_field(1.0);
  const Point p(1.5, -2.0);
  EXPECT_DOUBLE_EQ(default_fd_step(p), 1e-5 * 3.5);
  const auto s = bare.sample(p);
  const auto exact = delta_coefficients(DeltaFamily(1.0), p);
  EXPECT_LT(max_partial_error(s, exact), 1e-8);
}

TEST(NumericPartials, StencilLeavingDomainIsRejected) {
  const CallableField boxed([](double, double) { return CoefficientValues{1.0, 0.0}; },
                            Region(0.0, 1.0, 0.0, 1.0));
  EXPECT_THROW(numeric_partials(boxed, Point(0.0, 0.5), 1e-3), StencilOutOfDomain);
  EXPECT_THROW(numeric_partials(boxed, Point(0.5, 0.9999), 1e-3), StencilOutOfDomain);
  EXPECT_NO_THROW(numeric_partials(boxed, Point(0.5, 0.5), 1e-3));

  const auto bare = bare_delta_field(1.0);
  EXPECT_THROW(numeric_partials(bare, Point(-1.0 + 1e-6, 0.0), 1e-5), StencilOutOfDomain);
  EXPECT_THROW(numeric_partials(bare, Point(0.0, 0.0), 0.0), DomainError);
}

TEST(GridTableField, BilinearReproducesBilinearData) {
  const Lattice lat(Region(0.0, 2.0, -1.0, 1.0), GridSpec(5, 9));
  std::vector<double> a(lat.size()), b(lat.size());
  const auto fa = [](double x, double y) { return 1.0 + 0.5 * x - 0.25 * y + 0.125 * x * y; };
  const auto fb = [](double x, double y) { return -x + 2.0 * y; };
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      a[lat.index(i, j)] = fa(lat.x(i), lat.y(j));
      b[lat.index(i, j)] = fb(lat.x(i), lat.y(j));
    }
  }
  const GridTableField table(lat, a, b);
  for (double x : {0.0, 0.13, 1.0, 1.77, 2.0}) {
    for (double y : {-1.0, -0.31, 0.5, 1.0}) {
      const auto v = table.values(Point(x, y));
      EXPECT_NEAR(v.alpha, fa(x, y), 1e-14);
      EXPECT_NEAR(v.beta, fb(x, y), 1e-14);
    }
  }
  EXPECT_THROW(table.values(Point(2.5, 0.0)), DomainError);
  EXPECT_THROW(GridTableField(lat, a, std::vector<double>(3)), DomainError);
}
