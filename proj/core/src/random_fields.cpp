#include "hmx/random_fields.hpp"

#include <cmath>

namespace hmx {

ScalarField SmoothFieldGen::scalar(const ProductChart& chart) {
  const GridDims& d = chart.dims();
  struct Mode {
    double amp_re, amp_im, w1, wr, ph1, phr, phth;
    int kth;
  };
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> kdist(0, 2);
  std::vector<Mode> modes(max_modes_);
  const double L1 = d.x1_max - d.x1_min;
  const double Lr = d.r_max - d.r_min;
  for (auto& m : modes) {
    m.amp_re = unif(rng_);
    m.amp_im = unif(rng_);
    m.w1 = kPi / L1 * (1 + kdist(rng_));
    m.wr = kPi / Lr * (1 + kdist(rng_));
    m.kth = kdist(rng_);
    m.ph1 = kPi * unif(rng_);
    m.phr = kPi * unif(rng_);
    m.phth = kPi * unif(rng_);
  }
  ScalarField out(chart.size(), cplx{});
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) {
        const double x1 = d.x1(i), r = d.r(j), th = d.theta(k);
        cplx v{};
        for (const auto& m : modes) {
          const double s = std::cos(m.w1 * (x1 - d.x1_min) + m.ph1) *
                           std::cos(m.wr * (r - d.r_min) + m.phr) *
                           std::cos(m.kth * th + m.phth);
          v += cplx(m.amp_re, m.amp_im) * s;
        }
        out[d.idx(i, j, k)] = v;
      }
  return out;
}

GradedForm SmoothFieldGen::graded(const ProductChart& chart) {
  GradedForm out(chart.size());
  for (int c = 0; c < 8; ++c) out.comp[c] = scalar(chart);
  return out;
}

}  // namespace hmx
