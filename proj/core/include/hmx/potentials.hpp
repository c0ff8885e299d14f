#pragma once

#include <functional>

#include "hmx/calculus.hpp"
#include "hmx/chart.hpp"
#include "hmx/field.hpp"
#include "hmx/materials.hpp"

namespace hmx {

/// Pointwise 8x8 complex endomorphism field acting on graded component vectors.
struct MatrixPotential {
  std::size_t npts = 0;
  std::vector<cplx> a;  // 64 entries per point, row-major

  MatrixPotential() = default;
  explicit MatrixPotential(std::size_t n) : npts(n), a(64 * n, cplx{}) {}
  cplx& at(std::size_t p, int r, int c) { return a[64 * p + 8 * r + c]; }
  cplx at(std::size_t p, int r, int c) const { return a[64 * p + 8 * r + c]; }

  GradedForm apply(const GradedForm& w) const;
  MatrixPotential transpose() const;
  MatrixPotential conjugate() const;
  MatrixPotential adjoint() const;
  MatrixPotential operator-(const MatrixPotential& o) const;
  MatrixPotential operator-() const;
};

struct PotentialSet {
  MatrixPotential V, W, Wt, Wbar, Wstar;
};

/// Assemble V and W (with transpose/conjugate variants) from the material pair.
/// Wt/Wbar/Wstar are pointwise matrix transpose/conjugation of the assembled W.
PotentialSet build_potentials(const ProductChart& chart, const MaterialPair& m);

/// Independent block assembly of W^t (wedge and contraction blocks swapped),
/// used to cross-check MatrixPotential::transpose.
MatrixPotential assemble_w_transpose_blocks(const ProductChart& chart, const MaterialPair& m);

/// Diagonal Schrodinger-potential entries known in closed form:
/// q_alpha_entry = -kappa^2 + (1/2)(Lap alpha + (1/2) <d alpha, d alpha>)  (0-form slot of Q)
/// q_beta_entry  = likewise with beta                                      (3-form slot of Q)
ScalarField q_alpha_entry(const ProductChart& chart, const MaterialPair& m);
ScalarField q_beta_entry(const ProductChart& chart, const MaterialPair& m);
/// Q' diagonal entries: -kappa^2 - (1/2)(Lap beta - (1/2)<d beta, d beta>) on the
/// 0-form slot and the alpha analogue on the 3-form slot.
ScalarField qprime_alpha_slot_entry(const ProductChart& chart, const MaterialPair& m);
ScalarField qprime_beta_slot_entry(const ProductChart& chart, const MaterialPair& m);

/// Extract the pointwise matrix of a zeroth-order operator by applying it to
/// the eight constant component sections. Exact in the continuum; O(h^2) for
/// the discrete compositions.
MatrixPotential extract_potential(const ProductChart& chart,
                                  const std::function<GradedForm(const GradedForm&)>& op);

/// Compositional Schrodinger potentials Q = (P+W)(P-W^t) + Delta etc.
MatrixPotential extract_q(const ProductChart& chart, const PotentialSet& ps);
MatrixPotential extract_qprime(const ProductChart& chart, const PotentialSet& ps);

struct FactorizationResiduals {
  double q = 0.0, qprime = 0.0, qhat = 0.0;
};
/// Relative defects of the three second-order factorizations applied to Z.
FactorizationResiduals factorization_residual(const ProductChart& chart, const MaterialPair& m,
                                              const GradedForm& Z);

// --- Maxwell <-> Dirac bridge -------------------------------------------------
struct OneForm {
  std::array<ScalarField, 3> c;
  explicit OneForm(std::size_t n = 0) {
    for (auto& f : c) f.assign(n, cplx{});
  }
};

/// X = (0, *H | 0, E).
GradedForm bridge_to_dirac(const ProductChart& chart, const OneForm& E, const OneForm& H);
/// Inverse: read (E, H) off the 1-form and 2-form slots.
void bridge_from_dirac(const ProductChart& chart, const GradedForm& X, OneForm& E, OneForm& H);
/// Y = diag(mu^{1/2} on even slots, eps^{1/2} on odd slots) X.
GradedForm rescale_to_y(const MaterialPair& m, const GradedForm& X);

/// max(||*dE - i omega mu H||, ||*dH + i omega eps E||).
double maxwell_residual(const ProductChart& chart, const MaterialPair& m, const OneForm& E,
                        const OneForm& H);
/// The two first-order Maxwell residual forms as graded 1-form containers.
void maxwell_residual_forms(const ProductChart& chart, const MaterialPair& m, const OneForm& E,
                            const OneForm& H, OneForm& res1, OneForm& res2);

/// The closed-form potential difference driving the recovery pipeline:
/// q_alpha = (1/2) Lap(a1-a2) + (1/4)<da1,da1> - (1/4)<da2,da2> - omega^2(e1 m1 - e2 m2).
void q_difference(const ProductChart& chart, const MaterialPair& m1, const MaterialPair& m2,
                  ScalarField& q_alpha, ScalarField& q_beta);

}  // namespace hmx
