#include "triage/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace triage {

namespace {

std::string not_elliptic_message(double disc, const std::optional<std::pair<double, double>>& where) {
  std::ostringstream os;
  os.precision(17);
  os << "structure is not elliptic: discriminant 4*alpha - beta^2 = " << disc;
  if (where) os << " at (" << where->first << ", " << where->second << ")";
  return os.str();
}

std::complex<double> lambda_from_values(const CoefficientField& field, double x, double y) {
  const auto v = field.values(Point(x, y));
  CoefficientSample cs;
  cs.alpha = v.alpha;
  cs.beta = v.beta;
  return spectral_parameter(cs);
}

Obstruction obstruction_given(const CoefficientSample& cs, double disc) {
  const double q = cs.alpha_x - cs.alpha * cs.beta_y;
  const double p = cs.beta_x + cs.alpha_y - cs.beta * cs.beta_y;
  return {(cs.beta * q - 2.0 * cs.alpha * p) / disc, (2.0 * q - cs.beta * p) / disc};
}

StructureSample analyze_given(const CoefficientSample& cs, std::complex<double> lambda) {
  StructureSample s;
  s.disc = 4.0 * lambda.imag() * lambda.imag();
  s.lambda = lambda;
  s.mu = beltrami_coefficient(lambda);
  s.abs_mu = std::abs(s.mu);
  const auto g = obstruction_given(cs, s.disc);
  s.obstr_A = g.A;
  s.obstr_B = g.B;
  return s;
}

// Shared scan loop; `at` maps a lattice point to its StructureSample.
template <class Analyze>
RegionScanReport scan_lattice(const Region& region, const GridSpec& grid, double tol, bool closed_form,
                              Analyze at) {
  const GridSpec aligned = align_to_origin(region, grid);
  const Lattice lat(region, aligned);

  RegionScanReport rep{.delta = std::nullopt, .region = region, .grid = aligned};
  rep.rigidity_tol = tol;
  rep.closed_form_partials = closed_form;
  rep.inf_mu = std::numeric_limits<double>::infinity();
  rep.sup_mu = 0.0;

  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      const Point p = lat.point(i, j);
      StructureSample s;
      try {
        s = at(p);
      } catch (const NotElliptic& e) {
        throw NotElliptic(e.discriminant(), std::pair{p.x(), p.y()});
      }
      rep.inf_mu = std::min(rep.inf_mu, s.abs_mu);
      rep.sup_mu = std::max(rep.sup_mu, s.abs_mu);
      rep.max_abs_A = std::max(rep.max_abs_A, std::abs(s.obstr_A));
      rep.max_abs_B = std::max(rep.max_abs_B, std::abs(s.obstr_B));
    }
  }
  rep.kappa = condition_number(rep.sup_mu);
  rep.rigid = std::max(rep.max_abs_A, rep.max_abs_B) < rep.rigidity_tol;
  return rep;
}

}  // namespace

NotElliptic::NotElliptic(double discriminant, std::optional<std::pair<double, double>> where)
    : std::domain_error(not_elliptic_message(discriminant, where)),
      discriminant_(discriminant),
      where_(where) {}

double discriminant(const CoefficientSample& cs) {
  const double disc = std::fma(-cs.beta, cs.beta, 4.0 * cs.alpha);
  if (!(disc > 0.0)) throw NotElliptic(disc);
  return disc;
}

std::complex<double> spectral_parameter(const CoefficientSample& cs) {
  const double disc = discriminant(cs);
  return {-0.5 * cs.beta, 0.5 * std::sqrt(disc)};
}

std::complex<double> spectral_parameter(const DeltaFamily& fam, const Point& p) {
  const double r = 1.0 / (1.0 + p.x());
  return {p.y() * r, fam.delta() * r};
}

std::complex<double> beltrami_coefficient(std::complex<double> lambda) {
  if (!(lambda.imag() > 0.0)) {
    throw DomainError("Beltrami coefficient needs Im(lambda) > 0");
  }
  const std::complex<double> i(0.0, 1.0);
  return (lambda - i) / (lambda + i);
}

double condition_number(double sup_mu) {
  if (!(sup_mu >= 0.0) || !(sup_mu < 1.0)) {
    throw DomainError("condition number needs 0 <= sup|mu| < 1 (degenerate structure)");
  }
  const double q = (1.0 + sup_mu) / (1.0 - sup_mu);
  return q * q;
}

double Obstruction::magnitude() const noexcept { return std::max(std::abs(A), std::abs(B)); }

Obstruction obstruction(const CoefficientSample& cs) { return obstruction_given(cs, discriminant(cs)); }

StructureSample analyze_point(const CoefficientSample& cs) {
  StructureSample s = analyze_given(cs, spectral_parameter(cs));
  s.disc = discriminant(cs);
  return s;
}

std::complex<double> burgers_residual(const CoefficientField& field, const Point& p,
                                      DerivativeMode mode, double h) {
  if (mode == DerivativeMode::Auto && field.closed_form_partials()) {
    const auto cs = field.sample(p);
    const double disc = discriminant(cs);
    const std::complex<double> lambda(-0.5 * cs.beta, 0.5 * std::sqrt(disc));
    const double q = cs.alpha_x - cs.alpha * cs.beta_y;
    const double pc = cs.beta_x + cs.alpha_y - cs.beta * cs.beta_y;
    // lambda_x + lambda lambda_y = -(lambda pc + q) / (2 lambda + beta), 2 lambda + beta = i sqrt(disc)
    return std::complex<double>(0.0, 1.0) * (lambda * pc + q) / std::sqrt(disc);
  }

  require_stencil(field, p, h);
  const double x = p.x();
  const double y = p.y();
  const auto lam = lambda_from_values(field, x, y);
  const auto lam_x = (lambda_from_values(field, x + h, y) - lambda_from_values(field, x - h, y)) / (2 * h);
  const auto lam_y = (lambda_from_values(field, x, y + h) - lambda_from_values(field, x, y - h)) / (2 * h);
  return lam_x + lam * lam_y;
}

double default_rigidity_tolerance(const CoefficientField& field) noexcept {
  return field.closed_form_partials() ? kRigidityTolClosedForm : kRigidityTolFiniteDifference;
}

RegionScanReport scan_region(const CoefficientField& field, const Region& region,
                             const GridSpec& grid, std::optional<double> rigidity_tol) {
  if (const auto dom = field.domain(); dom && !dom->contains(region)) {
    throw DomainError("scan region is not contained in the field domain");
  }
  return scan_lattice(region, grid, rigidity_tol.value_or(default_rigidity_tolerance(field)),
                      field.closed_form_partials(),
                      [&](const Point& p) { return analyze_point(field.sample(p)); });
}

// For the delta-family, 4 alpha - beta^2 cancels to 4 delta^2 r^2 out of
// terms of size 4 y^2 r^2; lambda and the discriminant are taken in closed
// form so the scan stays meaningful down to delta ~ 1e-10.
RegionScanReport scan_region(const DeltaFamily& fam, const Region& region, const GridSpec& grid,
                             std::optional<double> rigidity_tol) {
  auto rep = scan_lattice(region, grid, rigidity_tol.value_or(kRigidityTolClosedForm), true,
                          [&](const Point& p) {
                            return analyze_given(delta_coefficients(fam, p), spectral_parameter(fam, p));
                          });
  rep.delta = fam.delta();
  return rep;
}

}  // namespace triage
