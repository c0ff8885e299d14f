#pragma once

#include <functional>
#include <stdexcept>

#include "hmx/chart.hpp"
#include "hmx/field.hpp"

namespace hmx {

struct BranchCutCrossing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex material pair (eps, mu) at a fixed frequency omega, with the
/// derived log-fields alpha = log eps, beta = log mu (principal branch),
/// kappa = omega sqrt(eps mu), and the orthonormal components of
/// D alpha = (1/i) d alpha and D beta (discrete derivatives).
class MaterialPair {
 public:
  using CoeffFn = std::function<cplx(double, double, double)>;

  MaterialPair(const ProductChart& chart, ScalarField eps, ScalarField mu, double omega);
  MaterialPair(const ProductChart& chart, const CoeffFn& eps, const CoeffFn& mu, double omega);

  static MaterialPair vacuum(const ProductChart& chart, double omega);

  double omega() const { return omega_; }
  const ScalarField& eps() const { return eps_; }
  const ScalarField& mu() const { return mu_; }
  const ScalarField& alpha() const { return alpha_; }
  const ScalarField& beta() const { return beta_; }
  const ScalarField& kappa() const { return kappa_; }
  /// Components of D(alpha) = (1/i) d(alpha) in the orthonormal coframe.
  const std::array<ScalarField, 3>& d_alpha() const { return dA_; }
  const std::array<ScalarField, 3>& d_beta() const { return dB_; }

 private:
  void derive(const ProductChart& chart);
  double omega_;
  ScalarField eps_, mu_, alpha_, beta_, kappa_;
  std::array<ScalarField, 3> dA_, dB_;
};

/// sqrt(c)-rescaled materials for the conformal gauge reduction: materials for
/// the metric c g are equivalent to (c^{1/2} eps, c^{1/2} mu) for g.
MaterialPair conformal_rescale_materials(const ProductChart& chart_with_c,
                                         const ProductChart& unit_chart, const MaterialPair& m);

}  // namespace hmx
