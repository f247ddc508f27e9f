#include "triage/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace triage {

namespace {

std::string describe_point(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

double node_coordinate(double lo, double hi, std::size_t n, std::size_t i) noexcept {
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Smallest odd count >= requested with an exact node at 0, or requested.
std::size_t aligned_count(double lo, double hi, std::size_t requested) {
  if (!(lo < 0.0 && 0.0 < hi)) return requested;
  constexpr std::size_t kSearch = 20000;
  const double t = -lo / (hi - lo);
  for (std::size_t n = requested | 1U; n < requested + kSearch; n += 2) {
    const auto i = static_cast<std::size_t>(std::llround(t * static_cast<double>(n - 1)));
    if (i > 0 && i + 1 < n && node_coordinate(lo, hi, n, i) == 0.0) return n;
  }
  return requested;
}

}  // namespace

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!admissible(x, y)) {
    throw DomainError("point " + describe_point(x, y) + " is outside the domain x > -1");
  }
}

bool Point::admissible(double x, double y) noexcept {
  return std::isfinite(x) && std::isfinite(y) && x + 1.0 >= kDomainGuard;
}

DeltaFamily::DeltaFamily(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("delta must be a positive finite number");
  }
}

Region::Region(double x_min, double x_max, double y_min, double y_max)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw DomainError("region bounds must be finite");
  }
  if (!(x_min + 1.0 >= kDomainGuard)) {
    throw DomainError("region x_min must satisfy x_min > -1");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw DomainError("region bounds must satisfy x_min < x_max and y_min < y_max");
  }
}

bool Region::contains(double x, double y) const noexcept {
  return x >= x_min_ && x <= x_max_ && y >= y_min_ && y <= y_max_;
}

bool Region::contains(const Region& other) const noexcept {
  return contains(other.x_min_, other.y_min_) && contains(other.x_max_, other.y_max_);
}

Region reference_region() { return Region(-0.5, 1.0, -1.0, 1.0); }

GridSpec::GridSpec(std::size_t nx_, std::size_t ny_) : nx(nx_), ny(ny_) {
  if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2 nodes per axis");
}

Lattice::Lattice(const Region& region, const GridSpec& grid) : region_(region), grid_(grid) {}

double Lattice::x(std::size_t i) const noexcept {
  return node_coordinate(region_.x_min(), region_.x_max(), grid_.nx, i);
}

double Lattice::y(std::size_t j) const noexcept {
  return node_coordinate(region_.y_min(), region_.y_max(), grid_.ny, j);
}

double Lattice::hx() const noexcept {
  return (region_.x_max() - region_.x_min()) / static_cast<double>(grid_.nx - 1);
}

double Lattice::hy() const noexcept {
  return (region_.y_max() - region_.y_min()) / static_cast<double>(grid_.ny - 1);
}

std::vector<Point> grid_points(const Region& region, const GridSpec& grid) {
  const Lattice lat(region, grid);
  std::vector<Point> pts;
  pts.reserve(lat.size());
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) pts.push_back(lat.point(i, j));
  }
  return pts;
}

GridSpec align_to_origin(const Region& region, const GridSpec& grid) {
  return GridSpec(aligned_count(region.x_min(), region.x_max(), grid.nx),
                  aligned_count(region.y_min(), region.y_max(), grid.ny));
}

CoefficientSample CoefficientField::sample(const Point& p) const {
  return numeric_partials(*this, p, default_fd_step(p));
}

// Everything is expressed through r = 1/(1+x) and y*r so that the identities
// alpha_x = alpha*beta_y and beta_x + alpha_y = beta*beta_y hold bit-exactly.
CoefficientSample delta_coefficients(const DeltaFamily& fam, const Point& p) {
  const double d = fam.delta();
  const double y = p.y();
  const double r = 1.0 / (1.0 + p.x());
  const double yr = y * r;

  CoefficientSample s;
  s.alpha = ((y * y + d * d) * r) * r;
  s.beta = -2.0 * yr;
  s.beta_y = -2.0 * r;
  s.alpha_x = s.alpha * s.beta_y;
  s.alpha_y = 2.0 * (yr * r);
  s.beta_x = s.alpha_y;
  return s;
}

CoefficientValues DeltaFamilyField::values(const Point& p) const {
  const auto s = delta_coefficients(fam_, p);
  return {s.alpha, s.beta};
}

CoefficientSample DeltaFamilyField::sample(const Point& p) const {
  return delta_coefficients(fam_, p);
}

PerturbedDeltaField::PerturbedDeltaField(DeltaFamily fam, double eps) : fam_(fam), eps_(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("perturbation eps must be a nonnegative finite number");
  }
}

CoefficientValues PerturbedDeltaField::values(const Point& p) const {
  const auto s = sample(p);
  return {s.alpha, s.beta};
}

CoefficientSample PerturbedDeltaField::sample(const Point& p) const {
  auto s = delta_coefficients(fam_, p);
  s.alpha += eps_;
  return s;
}

CallableField::CallableField(Sampler sampler, std::optional<Region> domain)
    : sampler_(std::move(sampler)), domain_(std::move(domain)) {
  if (!sampler_) throw DomainError("CallableField needs a sampler");
}

CoefficientValues CallableField::values(const Point& p) const {
  if (domain_ && !domain_->contains(p.x(), p.y())) {
    throw DomainError("point " + describe_point(p.x(), p.y()) + " lies outside the field region");
  }
  return sampler_(p.x(), p.y());
}

GridTableField::GridTableField(Lattice lattice, std::vector<double> alpha, std::vector<double> beta)
    : lattice_(std::move(lattice)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() != lattice_.size() || beta_.size() != lattice_.size()) {
    throw DomainError("coefficient table size does not match its lattice");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(alpha_.begin(), alpha_.end(), finite) ||
      !std::all_of(beta_.begin(), beta_.end(), finite)) {
    throw DomainError("coefficient table contains non-finite entries");
  }
}

CoefficientValues GridTableField::values(const Point& p) const {
  const Region& reg = lattice_.region();
  if (!reg.contains(p.x(), p.y())) {
    throw DomainError("point " + describe_point(p.x(), p.y()) + " lies outside the table");
  }
  const auto locate = [](double t, double lo, double h, std::size_t n) {
    const double s = (t - lo) / h;
    auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(n - 2)));
    return std::pair{i, s - static_cast<double>(i)};
  };
  const auto [i, fx] = locate(p.x(), reg.x_min(), lattice_.hx(), lattice_.nx());
  const auto [j, fy] = locate(p.y(), reg.y_min(), lattice_.hy(), lattice_.ny());

  const auto blend = [&](const std::vector<double>& f) {
    const double f00 = f[lattice_.index(i, j)];
    const double f10 = f[lattice_.index(i + 1, j)];
    const double f01 = f[lattice_.index(i, j + 1)];
    const double f11 = f[lattice_.index(i + 1, j + 1)];
    return (1 - fx) * (1 - fy) * f00 + fx * (1 - fy) * f10 + (1 - fx) * fy * f01 + fx * fy * f11;
  };
  return {blend(alpha_), blend(beta_)};
}

double default_fd_step(const Point& p) noexcept {
  return 1e-5 * std::max(1.0, std::abs(p.x()) + std::abs(p.y()));
}

void require_stencil(const CoefficientField& field, const Point& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("finite-difference step must be positive");
  const double x0 = p.x() - h;
  const double x1 = p.x() + h;
  const double y0 = p.y() - h;
  const double y1 = p.y() + h;
  bool inside = Point::admissible(x0, p.y());
  if (inside) {
    if (const auto dom = field.domain()) {
      inside = dom->contains(x0, y0) && dom->contains(x1, y1);
    }
  }
  if (!inside) {
    throw StencilOutOfDomain("finite-difference stencil of half-width " + std::to_string(h) +
                             " at " + describe_point(p.x(), p.y()) + " leaves the field domain");
  }
}

CoefficientSample numeric_partials(const CoefficientField& field, const Point& p, double h) {
  require_stencil(field, p, h);
  const auto c = field.values(p);
  const auto xp = field.values(Point(p.x() + h, p.y()));
  const auto xm = field.values(Point(p.x() - h, p.y()));
  const auto yp = field.values(Point(p.x(), p.y() + h));
  const auto ym = field.values(Point(p.x(), p.y() - h));
  const double inv = 0.5 / h;

  CoefficientSample s;
  s.alpha = c.alpha;
  s.beta = c.beta;
  s.alpha_x = (xp.alpha - xm.alpha) * inv;
  s.alpha_y = (yp.alpha - ym.alpha) * inv;
  s.beta_x = (xp.beta - xm.beta) * inv;
  s.beta_y = (yp.beta - ym.beta) * inv;
  return s;
}

}  // namespace triage
