#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "triage/fields.hpp"

namespace triage {

/// The discriminant 4 alpha - beta^2 is not positive: the structure is
/// parabolic or hyperbolic at the offending point.
class NotElliptic : public std::domain_error {
 public:
  explicit NotElliptic(double discriminant, std::optional<std::pair<double, double>> where = {});

  double discriminant() const noexcept { return discriminant_; }
  const std::optional<std::pair<double, double>>& where() const noexcept { return where_; }

 private:
  double discriminant_;
  std::optional<std::pair<double, double>> where_;
};

/// Delta = 4 alpha - beta^2; throws NotElliptic unless positive.
double discriminant(const CoefficientSample& cs);

/// Root of X^2 + beta X + alpha = 0 on the branch Im > 0.
std::complex<double> spectral_parameter(const CoefficientSample& cs);

/// Closed form (y + i delta) / (1 + x) for the delta-family.
std::complex<double> spectral_parameter(const DeltaFamily& fam, const Point& p);

/// mu = (lambda - i) / (lambda + i); requires Im lambda > 0.
std::complex<double> beltrami_coefficient(std::complex<double> lambda);

/// kappa = ((1 + sup|mu|) / (1 - sup|mu|))^2 for 0 <= sup|mu| < 1.
double condition_number(double sup_mu);

/// Transport obstruction G = A + B i expressed in the basis {1, i} of the
/// fiber algebra. Only alpha, beta and their first partials enter.
struct Obstruction {
  double A = 0.0;
  double B = 0.0;

  double magnitude() const noexcept;
};

Obstruction obstruction(const CoefficientSample& cs);

struct StructureSample {
  double disc = 0.0;
  std::complex<double> lambda;
  std::complex<double> mu;
  double abs_mu = 0.0;
  double obstr_A = 0.0;
  double obstr_B = 0.0;
};

StructureSample analyze_point(const CoefficientSample& cs);

enum class DerivativeMode {
  Auto,              ///< closed-form partials when the field has them
  FiniteDifference,  ///< central differences of spectral_parameter
};

/// Default step for the finite-difference Burgers residual.
inline constexpr double kBurgersFdStep = 1e-4;

/// lambda_x + lambda * lambda_y, which vanishes exactly when G does.
///
/// With closed-form partials lambda^2 is eliminated through the quadratic it
/// satisfies, leaving i (lambda (beta_x + alpha_y - beta beta_y)
/// + (alpha_x - alpha beta_y)) / sqrt(Delta).
std::complex<double> burgers_residual(const CoefficientField& field, const Point& p,
                                      DerivativeMode mode = DerivativeMode::Auto,
                                      double h = kBurgersFdStep);

inline constexpr double kRigidityTolClosedForm = 1e-10;
inline constexpr double kRigidityTolFiniteDifference = 1e-4;

double default_rigidity_tolerance(const CoefficientField& field) noexcept;

struct RegionScanReport {
  std::optional<double> delta;
  Region region;
  GridSpec grid;  ///< effective (origin-aligned) node counts
  double inf_mu = 0.0;
  double sup_mu = 0.0;
  double kappa = 1.0;
  double max_abs_A = 0.0;
  double max_abs_B = 0.0;
  double rigidity_tol = 0.0;
  bool closed_form_partials = false;
  bool rigid = false;
};

/// Scans |mu| and the obstruction over the origin-aligned lattice of
/// `region`. NotElliptic propagates with the failing node attached.
RegionScanReport scan_region(const CoefficientField& field, const Region& region,
                             const GridSpec& grid, std::optional<double> rigidity_tol = {});

RegionScanReport scan_region(const DeltaFamily& fam, const Region& region, const GridSpec& grid,
                             std::optional<double> rigidity_tol = {});

}  // namespace triage
