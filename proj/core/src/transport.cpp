#include "triage/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "triage/analysis.hpp"

namespace triage {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_interior(const Lattice& lat, std::size_t stride) {
  if (stride == 0) throw DomainError("finite-difference stride must be at least 1");
  if (lat.nx() <= 2 * stride || lat.ny() <= 2 * stride) {
    throw StencilOutOfDomain("lattice " + std::to_string(lat.nx()) + "x" + std::to_string(lat.ny()) +
                             " has no interior nodes for stride " + std::to_string(stride));
  }
}

RealPairJet pair_from_complex_jet(double delta, const Point& p, const ComplexJet& jet) {
  const double inv_d = 1.0 / delta;
  const double ratio = p.y() / delta;  // a / b
  const double scale = (1.0 + p.x()) / delta;  // 1 / b
  const double q = jet.w.imag();

  RealPairJet out;
  out.u = jet.w.real() - ratio * q;
  out.v = q * scale;
  out.u_x = jet.w_x.real() - ratio * jet.w_x.imag();
  out.u_y = jet.w_y.real() - q * inv_d - ratio * jet.w_y.imag();
  out.v_x = q * inv_d + scale * jet.w_x.imag();
  out.v_y = scale * jet.w_y.imag();
  return out;
}

template <class LambdaAt>
TransportResidual transport_residual_impl(const ComplexField& w, std::size_t stride, LambdaAt lambda_at) {
  const Lattice& lat = w.lattice;
  require_interior(lat, stride);

  TransportResidual out;
  out.hx = lat.hx() * static_cast<double>(stride);
  out.hy = lat.hy() * static_cast<double>(stride);
  out.rim = stride;
  out.values.assign(lat.size(), {kNaN, kNaN});

  const std::size_t k = stride;
  for (std::size_t j = k; j + k < lat.ny(); ++j) {
    for (std::size_t i = k; i + k < lat.nx(); ++i) {
      const auto w_x = (w.at(i + k, j) - w.at(i - k, j)) / (2.0 * out.hx);
      const auto w_y = (w.at(i, j + k) - w.at(i, j - k)) / (2.0 * out.hy);
      const auto r = w_x + lambda_at(lat.point(i, j)) * w_y;
      out.values[lat.index(i, j)] = r;
      out.max_abs = std::max(out.max_abs, std::abs(r));
    }
  }
  return out;
}

}  // namespace

ComplexField::ComplexField(Lattice lat) : lattice(std::move(lat)), values(lattice.size()) {}

ComplexField::ComplexField(Lattice lat, std::vector<std::complex<double>> vals)
    : lattice(std::move(lat)), values(std::move(vals)) {
  if (values.size() != lattice.size()) throw DomainError("complex field size does not match its lattice");
}

RealPairField::RealPairField(Lattice lat) : lattice(std::move(lat)), u(lattice.size()), v(lattice.size()) {}

RealPairField::RealPairField(Lattice lat, std::vector<double> u_vals, std::vector<double> v_vals)
    : lattice(std::move(lat)), u(std::move(u_vals)), v(std::move(v_vals)) {
  if (u.size() != lattice.size() || v.size() != lattice.size()) {
    throw DomainError("real pair field size does not match its lattice");
  }
}

std::complex<double> characteristic_coordinate(const DeltaFamily& fam, const Point& p) {
  const double r = 1.0 / (1.0 + p.x());
  return {p.y() * r, -(fam.delta() * p.x()) * r};
}

ComplexField solve_characteristic(const DeltaFamily& fam, const InitialData& f0, const Region& region,
                                  const GridSpec& grid) {
  ComplexField w{Lattice(region, grid)};
  const Lattice& lat = w.lattice;
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      w.at(i, j) = evaluate(f0, characteristic_coordinate(fam, lat.point(i, j)), fam.delta());
    }
  }
  return w;
}

ComplexField from_real_pair(const DeltaFamily& fam, const RealPairField& uv) {
  ComplexField w{uv.lattice};
  const Lattice& lat = uv.lattice;
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      const auto lam = spectral_parameter(fam, lat.point(i, j));
      const std::size_t n = lat.index(i, j);
      w.values[n] = {uv.u[n] + lam.real() * uv.v[n], lam.imag() * uv.v[n]};
    }
  }
  return w;
}

RealPairField to_real_pair(const DeltaFamily& fam, const ComplexField& w) {
  RealPairField uv{w.lattice};
  const Lattice& lat = w.lattice;
  const double delta = fam.delta();
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    const double ratio = lat.y(j) / delta;
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      const std::size_t n = lat.index(i, j);
      const double q = w.values[n].imag();
      uv.u[n] = w.values[n].real() - ratio * q;
      uv.v[n] = q * ((1.0 + lat.x(i)) / delta);
    }
  }
  return uv;
}

RealPairJet coefficient_pair_jet(const DeltaFamily& fam, const Point& p) {
  const auto cs = delta_coefficients(fam, p);
  return {-cs.alpha, -cs.beta, -cs.alpha_x, -cs.alpha_y, -cs.beta_x, -cs.beta_y};
}

ComplexJet characteristic_jet(const DeltaFamily& fam, const InitialData& f0, const Point& p) {
  const double r = 1.0 / (1.0 + p.x());
  const auto zeta = characteristic_coordinate(fam, p);
  const auto lam = spectral_parameter(fam, p);
  const auto g = derivative(f0, zeta, fam.delta());
  return {evaluate(f0, zeta, fam.delta()), -(g * lam) * r, g * r};
}

RealPairJet characteristic_pair_jet(const DeltaFamily& fam, const InitialData& f0, const Point& p) {
  return pair_from_complex_jet(fam.delta(), p, characteristic_jet(fam, f0, p));
}

ResidualReport system_residual(const CoefficientField& field, const Lattice& lattice,
                               const RealPairSolution& solution) {
  ResidualReport rep;
  rep.mode = ResidualMode::Analytic;
  rep.r1.resize(lattice.size());
  rep.r2.resize(lattice.size());
  for (std::size_t j = 0; j < lattice.ny(); ++j) {
    for (std::size_t i = 0; i < lattice.nx(); ++i) {
      const Point p = lattice.point(i, j);
      const auto c = field.values(p);
      const auto s = solution(p);
      const std::size_t n = lattice.index(i, j);
      rep.r1[n] = s.u_x - c.alpha * s.v_y;
      rep.r2[n] = s.v_x + s.u_y - c.beta * s.v_y;
      rep.max_r1 = std::max(rep.max_r1, std::abs(rep.r1[n]));
      rep.max_r2 = std::max(rep.max_r2, std::abs(rep.r2[n]));
    }
  }
  return rep;
}

ResidualReport system_residual(const CoefficientField& field, const RealPairField& uv,
                               std::size_t stride) {
  const Lattice& lat = uv.lattice;
  require_interior(lat, stride);

  ResidualReport rep;
  rep.mode = ResidualMode::FiniteDifference;
  rep.hx = lat.hx() * static_cast<double>(stride);
  rep.hy = lat.hy() * static_cast<double>(stride);
  rep.rim = stride;
  rep.r1.assign(lat.size(), kNaN);
  rep.r2.assign(lat.size(), kNaN);

  const std::size_t k = stride;
  const auto at = [&](const std::vector<double>& f, std::size_t i, std::size_t j) {
    return f[lat.index(i, j)];
  };
  for (std::size_t j = k; j + k < lat.ny(); ++j) {
    for (std::size_t i = k; i + k < lat.nx(); ++i) {
      const auto c = field.values(lat.point(i, j));
      const double u_x = (at(uv.u, i + k, j) - at(uv.u, i - k, j)) / (2.0 * rep.hx);
      const double u_y = (at(uv.u, i, j + k) - at(uv.u, i, j - k)) / (2.0 * rep.hy);
      const double v_x = (at(uv.v, i + k, j) - at(uv.v, i - k, j)) / (2.0 * rep.hx);
      const double v_y = (at(uv.v, i, j + k) - at(uv.v, i, j - k)) / (2.0 * rep.hy);
      const std::size_t n = lat.index(i, j);
      rep.r1[n] = u_x - c.alpha * v_y;
      rep.r2[n] = v_x + u_y - c.beta * v_y;
      rep.max_r1 = std::max(rep.max_r1, std::abs(rep.r1[n]));
      rep.max_r2 = std::max(rep.max_r2, std::abs(rep.r2[n]));
    }
  }
  return rep;
}

std::complex<double> transport_residual(const DeltaFamily& fam, const Point& p, const ComplexJet& jet) {
  return jet.w_x + spectral_parameter(fam, p) * jet.w_y;
}

TransportResidual transport_residual(const DeltaFamily& fam, const ComplexField& w, std::size_t stride) {
  return transport_residual_impl(w, stride, [&](const Point& p) { return spectral_parameter(fam, p); });
}

TransportResidual transport_residual(const CoefficientField& field, const ComplexField& w,
                                     std::size_t stride) {
  return transport_residual_impl(w, stride, [&](const Point& p) {
    const auto c = field.values(p);
    CoefficientSample cs;
    cs.alpha = c.alpha;
    cs.beta = c.beta;
    return spectral_parameter(cs);
  });
}

}  // namespace triage
