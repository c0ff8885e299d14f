#include "hmx/chart.hpp"

#include <cmath>

namespace hmx {

SimpleSurface SimpleSurface::flat_disc(double r_exit) {
  return SimpleSurface(
      "flat", [](double r, double) { return r * r; }, [](double r, double) { return 2.0 * r; },
      [](double, double) { return 0.0; }, [r_exit](double) { return r_exit; });
}

SimpleSurface SimpleSurface::perturbed_flat(double delta, double r_exit) {
  return SimpleSurface(
      "perturbed-flat",
      [delta](double r, double th) { return r * r * (1.0 + delta * r * std::cos(th)); },
      [delta](double r, double th) { return 2.0 * r + 3.0 * delta * r * r * std::cos(th); },
      [delta](double r, double th) { return -delta * r * r * r * std::sin(th); },
      [r_exit](double) { return r_exit; });
}

SimpleSurface SimpleSurface::spherical_cap(double sphere_radius, double r_exit) {
  const double R = sphere_radius;
  return SimpleSurface(
      "spherical-cap",
      [R](double r, double) {
        const double s = std::sin(r / R);
        return R * R * s * s;
      },
      [R](double r, double) { return R * std::sin(2.0 * r / R); },
      [](double, double) { return 0.0; }, [r_exit](double) { return r_exit; });
}

SimpleSurface SimpleSurface::constant_metric(double m0, double r_exit) {
  return SimpleSurface(
      "constant", [m0](double, double) { return m0; }, [](double, double) { return 0.0; },
      [](double, double) { return 0.0; }, [r_exit](double) { return r_exit; });
}

ProductChart::ProductChart(SimpleSurface surface, GridDims dims)
    : ProductChart(std::move(surface), dims, nullptr) {}

ProductChart::ProductChart(SimpleSurface surface, GridDims dims, ConformalFn conformal)
    : surface_(std::move(surface)), dims_(dims), cfn_(std::move(conformal)) {
  if (dims_.n1 < 3 || dims_.nr < 3 || dims_.nth < 4)
    throw std::invalid_argument("chart grid must have n1,nr >= 3 and ntheta >= 4");
  if (dims_.x1_max <= dims_.x1_min || dims_.r_max <= dims_.r_min)
    throw std::invalid_argument("chart ranges must be nonempty");
  if (dims_.r_min <= 0.0) throw std::invalid_argument("chart requires r_min > 0");
  unit_conformal_ = !cfn_;
  build();
}

namespace {
std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}
}  // namespace

void ProductChart::build() {
  const std::size_t n = dims_.size();
  c_.assign(n, 1.0);
  a1_.assign(n, 1.0);
  a2_.assign(n, 1.0);
  a3_.assign(n, 0.0);
  jac_.assign(n, 0.0);
  quad_.assign(n, 0.0);

  const double h1 = dims_.h1(), hr = dims_.hr(), hth = dims_.hth();
  for (int i = 0; i < dims_.n1; ++i) {
    const double w1 = (i == 0 || i == dims_.n1 - 1) ? 0.5 : 1.0;
    for (int j = 0; j < dims_.nr; ++j) {
      const double wr = (j == 0 || j == dims_.nr - 1) ? 0.5 : 1.0;
      const double r = dims_.r(j);
      for (int k = 0; k < dims_.nth; ++k) {
        const double th = dims_.theta(k);
        const std::size_t p = dims_.idx(i, j, k);
        const double m = surface_.metric(r, th);
        if (!(m > 0.0))
          throw NonSimpleSurface("metric m(r,theta) not positive at a chart sample");
        double c = 1.0;
        if (cfn_) {
          c = cfn_(dims_.x1(i), r, th);
          if (!(c > 0.0)) throw NonpositiveConformalFactor("conformal factor must be positive");
        }
        c_[p] = c;
        const double sc = std::sqrt(c);
        a1_[p] = sc;
        a2_[p] = sc;
        a3_[p] = std::sqrt(c * m);
        jac_[p] = a1_[p] * a2_[p] * a3_[p];
        quad_[p] = jac_[p] * w1 * wr * h1 * hr * hth;
      }
    }
  }

  // Boundary layout: X1Min, X1Max (nr x nth each), then RMin, RMax (n1 x nth each).
  boffset_[0] = 0;
  boffset_[1] = boffset_[0] + static_cast<std::size_t>(dims_.nr) * dims_.nth;
  boffset_[2] = boffset_[1] + static_cast<std::size_t>(dims_.nr) * dims_.nth;
  boffset_[3] = boffset_[2] + static_cast<std::size_t>(dims_.n1) * dims_.nth;
  bsize_ = boffset_[3] + static_cast<std::size_t>(dims_.n1) * dims_.nth;

  bquad_.assign(bsize_, 0.0);
  for (std::size_t f = 0; f < bsize_; ++f) {
    const BoundarySample s = boundary_sample(f);
    const std::size_t p = grid_index(s);
    if (s.face == Face::X1Min || s.face == Face::X1Max) {
      const double wr = (s.a == 0 || s.a == dims_.nr - 1) ? 0.5 : 1.0;
      bquad_[f] = a2_[p] * a3_[p] * wr * hr * hth;
    } else {
      const double w1 = (s.a == 0 || s.a == dims_.n1 - 1) ? 0.5 : 1.0;
      bquad_[f] = a1_[p] * a3_[p] * w1 * h1 * hth;
    }
  }

  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(h, &dims_.n1, sizeof dims_.n1);
  h = fnv1a(h, &dims_.nr, sizeof dims_.nr);
  h = fnv1a(h, &dims_.nth, sizeof dims_.nth);
  const double ext[4] = {dims_.x1_min, dims_.x1_max, dims_.r_min, dims_.r_max};
  h = fnv1a(h, ext, sizeof ext);
  h = fnv1a(h, a3_.data(), a3_.size() * sizeof(double));
  h = fnv1a(h, c_.data(), c_.size() * sizeof(double));
  hash_ = h;
}

std::size_t ProductChart::boundary_index(const BoundarySample& s) const {
  return boffset_[static_cast<int>(s.face)] + static_cast<std::size_t>(s.a) * dims_.nth + s.b;
}

BoundarySample ProductChart::boundary_sample(std::size_t flat) const {
  int f = 3;
  while (f > 0 && flat < boffset_[f]) --f;
  const std::size_t rel = flat - boffset_[f];
  BoundarySample s;
  s.face = static_cast<Face>(f);
  s.a = static_cast<int>(rel / dims_.nth);
  s.b = static_cast<int>(rel % dims_.nth);
  return s;
}

std::size_t ProductChart::grid_index(const BoundarySample& s) const {
  switch (s.face) {
    case Face::X1Min:
      return dims_.idx(0, s.a, s.b);
    case Face::X1Max:
      return dims_.idx(dims_.n1 - 1, s.a, s.b);
    case Face::RMin:
      return dims_.idx(s.a, 0, s.b);
    case Face::RMax:
      return dims_.idx(s.a, dims_.nr - 1, s.b);
  }
  return 0;
}

std::pair<int, double> ProductChart::normal(const BoundarySample& s) const {
  switch (s.face) {
    case Face::X1Min:
      return {0, -1.0};
    case Face::X1Max:
      return {0, +1.0};
    case Face::RMin:
      return {1, -1.0};
    case Face::RMax:
      return {1, +1.0};
  }
  return {0, 0.0};
}

}  // namespace hmx
