#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmx {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct NonSimpleSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonpositiveConformalFactor : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainTouchesPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A simple 2-manifold given in polar normal coordinates (r, theta) about an
/// external center point: the metric is dr^2 + m(r,theta) dtheta^2 with m > 0.
class SimpleSurface {
 public:
  using MetricFn = std::function<double(double, double)>;
  using ExitFn = std::function<double(double)>;

  SimpleSurface() = default;
  SimpleSurface(std::string center_label, MetricFn m, MetricFn dm_dr, MetricFn dm_dtheta,
                ExitFn r_exit)
      : center_(std::move(center_label)),
        m_(std::move(m)),
        dm_dr_(std::move(dm_dr)),
        dm_dth_(std::move(dm_dtheta)),
        r_exit_(std::move(r_exit)) {}

  double metric(double r, double th) const { return m_(r, th); }
  double metric_dr(double r, double th) const { return dm_dr_(r, th); }
  double metric_dtheta(double r, double th) const { return dm_dth_(r, th); }
  double exit_radius(double th) const { return r_exit_(th); }
  const std::string& center_label() const { return center_; }

  // Corpus surfaces. All are simple by construction on their stated ranges.
  static SimpleSurface flat_disc(double r_exit);
  static SimpleSurface perturbed_flat(double delta, double r_exit);
  static SimpleSurface spherical_cap(double sphere_radius, double r_exit);
  // Constant-metric fiber, for slab/box style test charts (m == m0).
  static SimpleSurface constant_metric(double m0, double r_exit);

 private:
  std::string center_;
  MetricFn m_, dm_dr_, dm_dth_;
  ExitFn r_exit_;
};

struct GridDims {
  int n1 = 0, nr = 0, nth = 0;
  double x1_min = 0.0, x1_max = 1.0;
  double r_min = 0.5, r_max = 1.5;

  std::size_t size() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(nr) *
           static_cast<std::size_t>(nth);
  }
  double h1() const { return (x1_max - x1_min) / (n1 - 1); }
  double hr() const { return (r_max - r_min) / (nr - 1); }
  double hth() const { return kTwoPi / nth; }
  double x1(int i) const { return x1_min + i * h1(); }
  double r(int j) const { return r_min + j * hr(); }
  double theta(int k) const { return k * hth(); }
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * nr + j) * nth + k;
  }
};

enum class Face : int { X1Min = 0, X1Max = 1, RMin = 2, RMax = 3 };

struct BoundarySample {
  Face face;
  int a = 0;  // r-index on x1 faces, x1-index on r faces
  int b = 0;  // theta-index
};

/// Product chart over [x1_min,x1_max] x [r_min,r_max] x S^1 carrying the metric
/// c(x) (dx1^2 + dr^2 + m(r,theta) dtheta^2). All graded-form components are
/// stored in the orthonormal coframe e1 = a1 dx1, e2 = a2 dr, e3 = a3 dtheta
/// with a1 = a2 = sqrt(c), a3 = sqrt(c m). Immutable after construction.
class ProductChart {
 public:
  using ConformalFn = std::function<double(double, double, double)>;

  ProductChart(SimpleSurface surface, GridDims dims);
  ProductChart(SimpleSurface surface, GridDims dims, ConformalFn conformal);

  const GridDims& dims() const { return dims_; }
  const SimpleSurface& surface() const { return surface_; }
  std::size_t size() const { return dims_.size(); }
  bool unit_conformal() const { return unit_conformal_; }

  const std::vector<double>& a1() const { return a1_; }
  const std::vector<double>& a2() const { return a2_; }
  const std::vector<double>& a3() const { return a3_; }
  const std::vector<double>& conformal() const { return c_; }
  /// Volume density a1 a2 a3 (= c^{3/2} sqrt(m)).
  const std::vector<double>& volume_weight() const { return jac_; }
  /// Interior quadrature weight per sample (trapezoid in x1 and r, full in theta).
  const std::vector<double>& quad_weight() const { return quad_; }

  // --- boundary bookkeeping ------------------------------------------------
  std::size_t boundary_size() const { return bsize_; }
  std::size_t boundary_face_offset(Face f) const { return boffset_[static_cast<int>(f)]; }
  std::size_t boundary_index(const BoundarySample& s) const;
  BoundarySample boundary_sample(std::size_t flat) const;
  /// Volume grid index of a boundary sample.
  std::size_t grid_index(const BoundarySample& s) const;
  /// Outward unit normal in the orthonormal frame: +/- e1 on x1 faces, +/- e2 on r faces.
  /// Returns (axis, sign) with axis in {0,1} meaning e1/e2.
  std::pair<int, double> normal(const BoundarySample& s) const;
  /// Induced area quadrature weight of a boundary sample.
  double boundary_quad_weight(std::size_t flat) const { return bquad_[flat]; }
  int face_na(Face f) const { return (f == Face::X1Min || f == Face::X1Max) ? dims_.nr : dims_.n1; }
  int face_nb(Face) const { return dims_.nth; }

  /// FNV-1a hash of the defining data; used in file sidecars to match fields to charts.
  std::uint64_t hash() const { return hash_; }

 private:
  void build();
  SimpleSurface surface_;
  GridDims dims_;
  ConformalFn cfn_;
  bool unit_conformal_ = true;
  std::vector<double> c_, a1_, a2_, a3_, jac_, quad_;
  std::size_t bsize_ = 0;
  std::array<std::size_t, 4> boffset_{};
  std::vector<double> bquad_;
  std::uint64_t hash_ = 0;
};

/// Boolean region on the boundary sample set of a chart.
struct BoundaryRegion {
  std::vector<std::uint8_t> mask;

  std::size_t count() const {
    std::size_t n = 0;
    for (auto v : mask) n += (v != 0);
    return n;
  }
  static BoundaryRegion all(const ProductChart& chart) {
    return BoundaryRegion{std::vector<std::uint8_t>(chart.boundary_size(), 1)};
  }
  static BoundaryRegion none(const ProductChart& chart) {
    return BoundaryRegion{std::vector<std::uint8_t>(chart.boundary_size(), 0)};
  }
  BoundaryRegion complement() const {
    BoundaryRegion out = *this;
    for (auto& v : out.mask) v = v ? 0 : 1;
    return out;
  }
};

}  // namespace hmx
