#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace triage {

/// Points closer than this to the line x = -1 are rejected; the coefficients
/// of the delta-family carry powers of 1/(1+x).
inline constexpr double kDomainGuard = 1e-12;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a finite-difference stencil would leave the region a field is
/// defined on (or the half-plane x > -1).
class StencilOutOfDomain : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A point of the elliptic domain {x > -1}.
class Point {
 public:
  Point(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  static bool admissible(double x, double y) noexcept;

 private:
  double x_;
  double y_;
};

/// Member of the one-parameter family, delta > 0.
class DeltaFamily {
 public:
  explicit DeltaFamily(double delta);
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

/// Coefficients (alpha, beta) of the system u_x - alpha v_y = 0,
/// v_x + u_y - beta v_y = 0 together with their first partials.
struct CoefficientSample {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_x = 0.0;
  double alpha_y = 0.0;
  double beta_x = 0.0;
  double beta_y = 0.0;
};

struct CoefficientValues {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max] inside {x > -1}.
class Region {
 public:
  Region(double x_min, double x_max, double y_min, double y_max);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_min() const noexcept { return y_min_; }
  double y_max() const noexcept { return y_max_; }

  bool contains(double x, double y) const noexcept;
  bool contains(const Region& other) const noexcept;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  double x_min_;
  double x_max_;
  double y_min_;
  double y_max_;
};

/// The compact set K = [-1/2, 1] x [-1, 1] on which degeneration is reported.
Region reference_region();

struct GridSpec {
  GridSpec(std::size_t nx, std::size_t ny);

  std::size_t nx;
  std::size_t ny;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Uniform node lattice over a region. Node (i, j) sits at
/// x_min + (x_max - x_min) * i / (nx - 1), endpoints included; storage is
/// row-major with x varying fastest.
class Lattice {
 public:
  Lattice(const Region& region, const GridSpec& grid);

  const Region& region() const noexcept { return region_; }
  const GridSpec& grid() const noexcept { return grid_; }

  std::size_t nx() const noexcept { return grid_.nx; }
  std::size_t ny() const noexcept { return grid_.ny; }
  std::size_t size() const noexcept { return grid_.nx * grid_.ny; }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * grid_.nx + i; }

  double x(std::size_t i) const noexcept;
  double y(std::size_t j) const noexcept;
  Point point(std::size_t i, std::size_t j) const { return Point(x(i), y(j)); }

  double hx() const noexcept;
  double hy() const noexcept;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  Region region_;
  GridSpec grid_;
};

std::vector<Point> grid_points(const Region& region, const GridSpec& grid);

/// Raises node counts (to the nearest odd count, searching upward) so that
/// coordinate 0 is a node on every axis whose range straddles 0. Axes that
/// do not straddle 0, or for which no aligned count is found nearby, keep
/// their requested count.
GridSpec align_to_origin(const Region& region, const GridSpec& grid);

/// Coefficient field on (part of) the half-plane.
///
/// values() is the only required hook. sample() defaults to central
/// differences of values(); fields that know their partials in closed form
/// override it and report closed_form_partials() == true.
class CoefficientField {
 public:
  virtual ~CoefficientField() = default;

  virtual CoefficientValues values(const Point& p) const = 0;
  virtual CoefficientSample sample(const Point& p) const;
  virtual bool closed_form_partials() const noexcept { return false; }

  /// Region the field can be evaluated on; nullopt means all of {x > -1}.
  virtual std::optional<Region> domain() const { return std::nullopt; }
};

CoefficientSample delta_coefficients(const DeltaFamily& fam, const Point& p);

class DeltaFamilyField final : public CoefficientField {
 public:
  explicit DeltaFamilyField(DeltaFamily fam) : fam_(fam) {}

  CoefficientValues values(const Point& p) const override;
  CoefficientSample sample(const Point& p) const override;
  bool closed_form_partials() const noexcept override { return true; }

  const DeltaFamily& family() const noexcept { return fam_; }

 private:
  DeltaFamily fam_;
};

/// alpha + eps with beta unchanged: a uniformly elliptic break of rigidity
/// (the discriminant grows by 4 eps).
class PerturbedDeltaField final : public CoefficientField {
 public:
  PerturbedDeltaField(DeltaFamily fam, double eps);

  CoefficientValues values(const Point& p) const override;
  CoefficientSample sample(const Point& p) const override;
  bool closed_form_partials() const noexcept override { return true; }

  double epsilon() const noexcept { return eps_; }

 private:
  DeltaFamily fam_;
  double eps_;
};

/// User-supplied (alpha, beta) sampler; partials by finite differences.
class CallableField final : public CoefficientField {
 public:
  using Sampler = std::function<CoefficientValues(double x, double y)>;

  explicit CallableField(Sampler sampler, std::optional<Region> domain = std::nullopt);

  CoefficientValues values(const Point& p) const override;
  std::optional<Region> domain() const override { return domain_; }

 private:
  Sampler sampler_;
  std::optional<Region> domain_;
};

/// Tabulated (alpha, beta) on a lattice, bilinearly interpolated.
class GridTableField final : public CoefficientField {
 public:
  GridTableField(Lattice lattice, std::vector<double> alpha, std::vector<double> beta);

  CoefficientValues values(const Point& p) const override;
  std::optional<Region> domain() const override { return lattice_.region(); }

  const Lattice& lattice() const noexcept { return lattice_; }
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::vector<double>& beta() const noexcept { return beta_; }

 private:
  Lattice lattice_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// Default central-difference step, 1e-5 * max(1, |x| + |y|).
double default_fd_step(const Point& p) noexcept;

/// Throws StencilOutOfDomain unless p +- h (both axes) lies in the field's
/// domain and in {x > -1}.
void require_stencil(const CoefficientField& field, const Point& p, double h);

/// alpha, beta sampled at p; the four partials by central differences.
CoefficientSample numeric_partials(const CoefficientField& field, const Point& p, double h);

}  // namespace triage
