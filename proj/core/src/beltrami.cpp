#include "triage/beltrami.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "triage/analysis.hpp"

namespace triage {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Quintic smoothstep: C^2, 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

}  // namespace

TorusGrid::TorusGrid(std::size_t n, double half_width) : n_(n), half_width_(half_width) {
  if (n < 16 || !is_power_of_two(n)) throw DomainError("torus grid size must be a power of two >= 16");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("torus half-width must be positive");
  }
}

double TorusGrid::coordinate(std::size_t i) const noexcept {
  return -half_width_ + spacing() * static_cast<double>(i);
}

double TorusGrid::wavenumber(std::size_t i) const noexcept {
  const auto m = static_cast<double>(i < n_ / 2 ? static_cast<std::ptrdiff_t>(i)
                                                 : static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n_));
  return std::numbers::pi * m / half_width_;
}

struct FourierOperators::Impl {
  TorusGrid grid;
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Impl(const TorusGrid& g) : grid(g) {
    const int n = static_cast<int>(g.n());
    buffer = fftw_alloc_complex(g.size());
    if (!buffer) throw std::bad_alloc();
    forward = fftw_plan_dft_2d(n, n, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_2d(n, n, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;

  template <class Symbol>
  ComplexGrid apply(std::span<const std::complex<double>> f, Symbol symbol) {
    if (f.size() != grid.size()) throw DomainError("grid function size does not match the torus grid");
    auto* data = reinterpret_cast<std::complex<double>*>(buffer);
    std::copy(f.begin(), f.end(), data);
    fftw_execute(forward);
    const std::size_t n = grid.n();
    for (std::size_t j = 0; j < n; ++j) {
      const double xi2 = grid.wavenumber(j);
      for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> xi(grid.wavenumber(i), xi2);
        auto& c = data[grid.index(i, j)];
        c = (i == 0 && j == 0) ? std::complex<double>(0.0, 0.0) : c * symbol(xi);
      }
    }
    fftw_execute(backward);
    const double scale = 1.0 / static_cast<double>(grid.size());
    ComplexGrid out(data, data + grid.size());
    for (auto& v : out) v *= scale;
    return out;
  }
};

FourierOperators::FourierOperators(const TorusGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FourierOperators::~FourierOperators() = default;
FourierOperators::FourierOperators(FourierOperators&&) noexcept = default;
FourierOperators& FourierOperators::operator=(FourierOperators&&) noexcept = default;

const TorusGrid& FourierOperators::grid() const noexcept { return impl_->grid; }

ComplexGrid FourierOperators::beurling(std::span<const std::complex<double>> f) {
  return impl_->apply(f, [](std::complex<double> xi) { return std::conj(xi) / xi; });
}

ComplexGrid FourierOperators::cauchy(std::span<const std::complex<double>> f) {
  return impl_->apply(f, [](std::complex<double> xi) { return std::complex<double>(0.0, -2.0) / xi; });
}

ComplexGrid beurling_transform(const TorusGrid& grid, std::span<const std::complex<double>> f) {
  FourierOperators ops(grid);
  return ops.beurling(f);
}

ComplexGrid truncated_delta_mu(const DeltaFamily& fam, const TorusGrid& grid, const Region& core,
                               double margin) {
  if (!(margin > 0.0)) throw DomainError("truncation margin must be positive");
  if (!(core.x_min() - margin + 1.0 >= kDomainGuard)) {
    throw DomainError("truncation ring reaches x <= -1");
  }
  if (core.x_min() - margin < -grid.half_width() || core.x_max() + margin >= grid.half_width() ||
      core.y_min() - margin < -grid.half_width() || core.y_max() + margin >= grid.half_width()) {
    throw DomainError("truncation ring does not fit inside the torus box");
  }
  const auto ramp = [margin](double t, double lo, double hi) {
    return smoothstep((t - (lo - margin)) / margin) * smoothstep(((hi + margin) - t) / margin);
  };

  ComplexGrid mu(grid.size());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double y = grid.coordinate(j);
    const double by = ramp(y, core.y_min(), core.y_max());
    for (std::size_t i = 0; i < grid.n(); ++i) {
      const double x = grid.coordinate(i);
      const double b = by * ramp(x, core.x_min(), core.x_max());
      if (b == 0.0) continue;
      mu[grid.index(i, j)] = b * beltrami_coefficient(spectral_parameter(fam, Point(x, y)));
    }
  }
  return mu;
}

BeltramiProblem delta_family_problem(const DeltaFamily& fam, const TorusGrid& grid, const Region& core,
                                     double margin) {
  return BeltramiProblem{grid, truncated_delta_mu(fam, grid, core, margin)};
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::Diverged: return "Diverged";
    case Verdict::MaxIterReached: return "MaxIterReached";
  }
  return "MaxIterReached";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "Converged") return Verdict::Converged;
  if (s == "Diverged") return Verdict::Diverged;
  if (s == "MaxIterReached") return Verdict::MaxIterReached;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

BeltramiSolution solve_beltrami_neumann(const BeltramiProblem& problem) {
  const TorusGrid& grid = problem.grid;
  if (problem.mu.size() != grid.size()) throw DomainError("mu does not match the torus grid");

  BeltramiSolution sol;
  sol.phi.assign(grid.size(), {0.0, 0.0});
  IterationTrace& trace = sol.trace;
  for (const auto& m : problem.mu) trace.sup_mu = std::max(trace.sup_mu, std::abs(m));
  trace.verdict = Verdict::MaxIterReached;

  FourierOperators ops(grid);
  for (std::size_t k = 1; k <= problem.max_iter; ++k) {
    const ComplexGrid s = ops.beurling(sol.phi);
    double diff = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const auto next = problem.mu[n] * (1.0 + s[n]);
      diff = std::max(diff, std::abs(next - sol.phi[n]));
      sol.phi[n] = next;
    }
    trace.residuals.push_back(diff);
    trace.iterations = k;
    if (!std::isfinite(diff)) {
      trace.verdict = Verdict::Diverged;
      break;
    }
    if (diff < problem.tol) {
      trace.verdict = Verdict::Converged;
      break;
    }
    if (diff > problem.divergence_factor * trace.residuals.front()) {
      trace.verdict = Verdict::Diverged;
      break;
    }
  }

  if (trace.verdict == Verdict::Converged) {
    sol.w = ops.cauchy(sol.phi);
    for (std::size_t j = 0; j < grid.n(); ++j) {
      for (std::size_t i = 0; i < grid.n(); ++i) {
        sol.w[grid.index(i, j)] += std::complex<double>(grid.coordinate(i), grid.coordinate(j));
      }
    }
  }
  return sol;
}

ContractionEstimate contraction_estimate(double sup_mu, double p) {
  if (!(p >= 2.0)) throw DomainError("contraction estimate is defined for p >= 2");
  if (!(sup_mu >= 0.0)) throw DomainError("sup|mu| must be nonnegative");
  const double factor = sup_mu * (p - 1.0);
  return {factor, factor >= kNearDivergentContraction};
}

}  // namespace triage
