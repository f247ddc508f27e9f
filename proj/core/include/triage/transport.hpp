#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "triage/fields.hpp"
#include "triage/initial_data.hpp"

namespace triage {

/// Grid samples of the complex unknown w = p + i q.
struct ComplexField {
  Lattice lattice;
  std::vector<std::complex<double>> values;

  explicit ComplexField(Lattice lat);
  ComplexField(Lattice lat, std::vector<std::complex<double>> vals);

  std::complex<double>& at(std::size_t i, std::size_t j) { return values[lattice.index(i, j)]; }
  const std::complex<double>& at(std::size_t i, std::size_t j) const {
    return values[lattice.index(i, j)];
  }
};

/// Grid samples of the real unknowns (u, v).
struct RealPairField {
  Lattice lattice;
  std::vector<double> u;
  std::vector<double> v;

  explicit RealPairField(Lattice lat);
  RealPairField(Lattice lat, std::vector<double> u_vals, std::vector<double> v_vals);
};

/// zeta = y - x lambda = (y - i delta x) / (1 + x); constant along
/// characteristics and lambda = zeta + i delta.
std::complex<double> characteristic_coordinate(const DeltaFamily& fam, const Point& p);

/// w(x, y) = f0(zeta(x, y)), the solution of w_x + lambda w_y = 0 with
/// w(0, y) = f0(y). Every catalog f0 is entire, so the formula is evaluated
/// on the whole rectangle. Cost per node does not depend on delta.
ComplexField solve_characteristic(const DeltaFamily& fam, const InitialData& f0,
                                  const Region& region, const GridSpec& grid);

/// w = (u + a v) + i b v with lambda = a + i b.
ComplexField from_real_pair(const DeltaFamily& fam, const RealPairField& uv);

/// u = p - (a/b) q, v = q / b.
RealPairField to_real_pair(const DeltaFamily& fam, const ComplexField& w);

/// (u, v) and first partials at a point, for residuals with exact derivatives.
struct RealPairJet {
  double u = 0.0;
  double v = 0.0;
  double u_x = 0.0;
  double u_y = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
};

struct ComplexJet {
  std::complex<double> w;
  std::complex<double> w_x;
  std::complex<double> w_y;
};

using RealPairSolution = std::function<RealPairJet(const Point&)>;

/// The pair (u, v) = (-alpha, -beta), image of w = lambda^2.
RealPairJet coefficient_pair_jet(const DeltaFamily& fam, const Point& p);

/// w = f0(zeta) with its exact partials w_x = -f0'(zeta) lambda / (1+x),
/// w_y = f0'(zeta) / (1+x).
ComplexJet characteristic_jet(const DeltaFamily& fam, const InitialData& f0, const Point& p);

/// The real pair recovered from characteristic_jet, partials included.
RealPairJet characteristic_pair_jet(const DeltaFamily& fam, const InitialData& f0, const Point& p);

enum class ResidualMode { Analytic, FiniteDifference };

/// r1 = u_x - alpha v_y, r2 = v_x + u_y - beta v_y over a lattice.
///
/// In finite-difference mode the stencil reaches `stride` nodes to each
/// side; nodes closer than that to the boundary are excluded (stored as NaN)
/// and `rim` records the excluded width.
struct ResidualReport {
  ResidualMode mode = ResidualMode::Analytic;
  double hx = 0.0;
  double hy = 0.0;
  std::size_t rim = 0;
  double max_r1 = 0.0;
  double max_r2 = 0.0;
  std::vector<double> r1;
  std::vector<double> r2;

  double max_residual() const noexcept { return max_r1 > max_r2 ? max_r1 : max_r2; }
};

ResidualReport system_residual(const CoefficientField& field, const Lattice& lattice,
                               const RealPairSolution& solution);

ResidualReport system_residual(const CoefficientField& field, const RealPairField& uv,
                               std::size_t stride = 1);

/// Exact w_x + lambda w_y from a jet.
std::complex<double> transport_residual(const DeltaFamily& fam, const Point& p, const ComplexJet& jet);

struct TransportResidual {
  double hx = 0.0;
  double hy = 0.0;
  std::size_t rim = 0;
  double max_abs = 0.0;
  std::vector<std::complex<double>> values;  ///< NaN on the excluded rim
};

/// w_x + lambda w_y by central differences with the closed-form lambda.
TransportResidual transport_residual(const DeltaFamily& fam, const ComplexField& w,
                                     std::size_t stride = 1);

/// Same, with lambda taken from the field's (alpha, beta) at each node.
TransportResidual transport_residual(const CoefficientField& field, const ComplexField& w,
                                     std::size_t stride = 1);

}  // namespace triage
