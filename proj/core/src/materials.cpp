#include "hmx/materials.hpp"

#include <cmath>

#include "hmx/calculus.hpp"

namespace hmx {

MaterialPair::MaterialPair(const ProductChart& chart, ScalarField eps, ScalarField mu,
                           double omega)
    : omega_(omega), eps_(std::move(eps)), mu_(std::move(mu)) {
  if (eps_.size() != chart.size() || mu_.size() != chart.size())
    throw std::invalid_argument("material fields must match the chart grid");
  if (!(omega_ > 0.0)) throw std::invalid_argument("omega must be positive");
  derive(chart);
}

MaterialPair::MaterialPair(const ProductChart& chart, const CoeffFn& eps, const CoeffFn& mu,
                           double omega)
    : MaterialPair(chart, sample_scalar(chart, eps), sample_scalar(chart, mu), omega) {}

MaterialPair MaterialPair::vacuum(const ProductChart& chart, double omega) {
  return MaterialPair(chart, ScalarField(chart.size(), cplx(1.0, 0.0)),
                      ScalarField(chart.size(), cplx(1.0, 0.0)), omega);
}

void MaterialPair::derive(const ProductChart& chart) {
  const std::size_t n = chart.size();
  alpha_.resize(n);
  beta_.resize(n);
  kappa_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (!(eps_[p].real() > 0.0) || !(mu_[p].real() > 0.0))
      throw std::invalid_argument("materials must have positive real part");
    alpha_[p] = std::log(eps_[p]);
    beta_[p] = std::log(mu_[p]);
    kappa_[p] = omega_ * std::sqrt(eps_[p] * mu_[p]);
  }

  // principal-branch continuity: neighboring samples of alpha/beta must not
  // jump across the cut
  const GridDims& d = chart.dims();
  auto check_jumps = [&](const ScalarField& f, const char* name) {
    for (int i = 0; i < d.n1; ++i)
      for (int j = 0; j < d.nr; ++j)
        for (int k = 0; k < d.nth; ++k) {
          const std::size_t p = d.idx(i, j, k);
          const std::size_t q = d.idx(i, j, (k + 1) % d.nth);
          if (std::abs(f[p].imag() - f[q].imag()) > kPi ||
              (j + 1 < d.nr && std::abs(f[p].imag() - f[d.idx(i, j + 1, k)].imag()) > kPi) ||
              (i + 1 < d.n1 && std::abs(f[p].imag() - f[d.idx(i + 1, j, k)].imag()) > kPi))
            throw BranchCutCrossing(std::string("log of ") + name +
                                    " crosses the principal branch cut");
        }
  };
  check_jumps(alpha_, "eps");
  check_jumps(beta_, "mu");

  const cplx minus_i(0.0, -1.0);
  GradedForm a0(n), b0(n);
  a0.comp[0] = alpha_;
  b0.comp[0] = beta_;
  const GradedForm da = exterior_d(chart, a0);
  const GradedForm db = exterior_d(chart, b0);
  for (int c = 0; c < 3; ++c) {
    dA_[c].resize(n);
    dB_[c].resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      dA_[c][p] = minus_i * da.comp[5 + c][p];
      dB_[c][p] = minus_i * db.comp[5 + c][p];
    }
  }
}

MaterialPair conformal_rescale_materials(const ProductChart& chart_with_c,
                                         const ProductChart& unit_chart, const MaterialPair& m) {
  const auto& c = chart_with_c.conformal();
  ScalarField eps(m.eps()), mu(m.mu());
  for (std::size_t p = 0; p < eps.size(); ++p) {
    const double s = std::sqrt(c[p]);
    eps[p] *= s;
    mu[p] *= s;
  }
  return MaterialPair(unit_chart, std::move(eps), std::move(mu), m.omega());
}

}  // namespace hmx
