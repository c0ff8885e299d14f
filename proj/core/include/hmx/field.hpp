#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hmx/chart.hpp"

namespace hmx {

using ScalarField = std::vector<cplx>;

/// Component slots of a graded form (Phi, *H | *Psi, E):
///   0       : 0-form
///   1,2,3   : 2-form in e1^e2, e1^e3, e2^e3
///   4       : 3-form (coefficient of the volume form)
///   5,6,7   : 1-form in e1, e2, e3
/// Components refer to the orthonormal coframe of a ProductChart, so pointwise
/// inner products are plain component sums.
inline constexpr int kSlot0Form = 0;
inline constexpr int kSlot2Form = 1;  // +0,+1,+2 -> (12),(13),(23)
inline constexpr int kSlot3Form = 4;
inline constexpr int kSlot1Form = 5;  // +0,+1,+2 -> e1,e2,e3

struct GradedForm {
  std::array<ScalarField, 8> comp;

  GradedForm() = default;
  explicit GradedForm(std::size_t n) {
    for (auto& c : comp) c.assign(n, cplx(0.0, 0.0));
  }
  static GradedForm zero(const ProductChart& chart) { return GradedForm(chart.size()); }
  std::size_t size() const { return comp[0].size(); }

  GradedForm& operator+=(const GradedForm& o) {
    for (int c = 0; c < 8; ++c)
      for (std::size_t p = 0; p < comp[c].size(); ++p) comp[c][p] += o.comp[c][p];
    return *this;
  }
  GradedForm& operator-=(const GradedForm& o) {
    for (int c = 0; c < 8; ++c)
      for (std::size_t p = 0; p < comp[c].size(); ++p) comp[c][p] -= o.comp[c][p];
    return *this;
  }
  GradedForm& operator*=(cplx s) {
    for (auto& c : comp)
      for (auto& v : c) v *= s;
    return *this;
  }
};

inline GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
inline GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
inline GradedForm operator*(cplx s, GradedForm a) { return a *= s; }

/// Tangential graded data on the boundary sample set: one slot per degree that
/// pulls back to the face (0-form, two tangential 1-form components, one
/// tangent-tangent 2-form component). Components are in the face orthonormal
/// frame: (e2, e3) on x1 faces, (e1, e3) on r faces.
struct BoundaryGradedForm {
  std::array<std::vector<cplx>, 4> comp;  // deg0, deg1a, deg1b, deg2

  explicit BoundaryGradedForm(std::size_t nboundary = 0) {
    for (auto& c : comp) c.assign(nboundary, cplx(0.0, 0.0));
  }
  std::size_t size() const { return comp[0].size(); }

  BoundaryGradedForm& operator+=(const BoundaryGradedForm& o) {
    for (int c = 0; c < 4; ++c)
      for (std::size_t p = 0; p < comp[c].size(); ++p) comp[c][p] += o.comp[c][p];
    return *this;
  }
  BoundaryGradedForm& operator-=(const BoundaryGradedForm& o) {
    for (int c = 0; c < 4; ++c)
      for (std::size_t p = 0; p < comp[c].size(); ++p) comp[c][p] -= o.comp[c][p];
    return *this;
  }
  BoundaryGradedForm& operator*=(cplx s) {
    for (auto& c : comp)
      for (auto& v : c) v *= s;
    return *this;
  }
};

inline BoundaryGradedForm operator-(BoundaryGradedForm a, const BoundaryGradedForm& b) {
  return a -= b;
}

/// Smooth bump supported on (lo, hi): exp(1 - 1/(1 - t^2)) with t the affine
/// map onto (-1, 1); identically zero outside, all derivatives vanish at the ends.
inline double bump_interval(double s, double lo, double hi) {
  const double t = (2.0 * s - lo - hi) / (hi - lo);
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

/// Sample fn(x1, r, theta) on the chart grid.
template <class F>
ScalarField sample_scalar(const ProductChart& chart, F&& fn) {
  const GridDims& d = chart.dims();
  ScalarField out(chart.size());
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) out[d.idx(i, j, k)] = cplx(fn(d.x1(i), d.r(j), d.theta(k)));
  return out;
}

}  // namespace hmx
