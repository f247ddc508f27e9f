#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "triage/fields.hpp"

namespace triage {

using ComplexGrid = std::vector<std::complex<double>>;

/// Periodic n x n grid on the box [-L, L)^2; node (i, j) sits at
/// (-L + 2L i / n, -L + 2L j / n), stored row-major with x fastest.
class TorusGrid {
 public:
  TorusGrid(std::size_t n, double half_width);

  std::size_t n() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return n_ * n_; }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * n_ + i; }

  double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(n_); }
  double coordinate(std::size_t i) const noexcept;
  /// Angular wavenumber of FFT bin i (negative frequencies in the upper half).
  double wavenumber(std::size_t i) const noexcept;

 private:
  std::size_t n_;
  double half_width_;
};

/// Fourier-multiplier operators on a TorusGrid. Owns the FFT plans and
/// scratch buffers, so one instance must not be used from two threads at once.
class FourierOperators {
 public:
  explicit FourierOperators(const TorusGrid& grid);
  ~FourierOperators();
  FourierOperators(FourierOperators&&) noexcept;
  FourierOperators& operator=(FourierOperators&&) noexcept;
  FourierOperators(const FourierOperators&) = delete;
  FourierOperators& operator=(const FourierOperators&) = delete;

  const TorusGrid& grid() const noexcept;

  /// Beurling transform: symbol conj(xi) / xi, zero mode annihilated.
  ComplexGrid beurling(std::span<const std::complex<double>> f);
  /// Solid Cauchy transform, the inverse of d/dzbar: symbol 2 / (i xi),
  /// zero mode annihilated.
  ComplexGrid cauchy(std::span<const std::complex<double>> f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ComplexGrid beurling_transform(const TorusGrid& grid, std::span<const std::complex<double>> f);

struct BeltramiProblem {
  TorusGrid grid;
  ComplexGrid mu;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  double divergence_factor = 1e3;
};

/// Delta-family Beltrami coefficient times a C^2 bump equal to 1 on `core`
/// and 0 outside a ring of width `margin`, sampled on the torus.
ComplexGrid truncated_delta_mu(const DeltaFamily& fam, const TorusGrid& grid, const Region& core,
                               double margin);

inline constexpr double kDefaultTruncationMargin = 0.25;

BeltramiProblem delta_family_problem(const DeltaFamily& fam, const TorusGrid& grid,
                                     const Region& core = reference_region(),
                                     double margin = kDefaultTruncationMargin);

enum class Verdict { Converged, Diverged, MaxIterReached };

std::string_view to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view s);

struct IterationTrace {
  std::vector<double> residuals;  ///< sup-norm of phi_{k+1} - phi_k, k = 0, 1, ...
  Verdict verdict = Verdict::MaxIterReached;
  std::size_t iterations = 0;
  double sup_mu = 0.0;
};

struct BeltramiSolution {
  ComplexGrid w;  ///< z + C(phi); empty unless the iteration converged
  ComplexGrid phi;
  IterationTrace trace;
};

/// Neumann iteration phi_{k+1} = mu (1 + S phi_k), phi_0 = 0, for
/// w_zbar = mu w_z. Failure to converge is reported in the trace.
BeltramiSolution solve_beltrami_neumann(const BeltramiProblem& problem);

inline constexpr double kNearDivergentContraction = 0.99;

struct ContractionEstimate {
  double factor = 0.0;
  bool near_divergent = false;
};

/// sup|mu| * (p - 1), the L^p contraction bound of mu S for p >= 2.
ContractionEstimate contraction_estimate(double sup_mu, double p = 2.0);

}  // namespace triage
