#pragma once

#include <array>
#include <optional>

#include "hmx/chart.hpp"
#include "hmx/field.hpp"

namespace hmx {

/// Constant complex covector in the orthonormal coframe; shifts d and delta as
/// d_xi = d + xi^ and delta_xi = delta - i_xi, which is the conjugation
/// e^{-phi} op e^{phi} for any phase with d(phi) = xi.
struct CovectorShift {
  cplx c1{0.0, 0.0}, c2{0.0, 0.0}, c3{0.0, 0.0};
  bool zero() const { return c1 == cplx{} && c2 == cplx{} && c3 == cplx{}; }
  static CovectorShift real_x1(double tau) { return {cplx(tau, 0.0), {}, {}}; }
  /// d of tau*(x1 + i r): the null covector tau*(e1 + i e2). Requires c == 1.
  static CovectorShift cgo_phase(double tau) { return {cplx(tau, 0.0), cplx(0.0, tau), {}}; }
};

// --- scalar derivatives ------------------------------------------------------
// Second-order stencils: centered in the interior, one-sided at x1/r ends,
// periodic wrap in theta.
void diff_x1(const ProductChart& chart, const ScalarField& f, ScalarField& out);
void diff_r(const ProductChart& chart, const ScalarField& f, ScalarField& out);
void diff_theta(const ProductChart& chart, const ScalarField& f, ScalarField& out);

// --- pointwise graded algebra ------------------------------------------------
GradedForm hodge_star(const ProductChart& chart, const GradedForm& w);
/// xi ^ w with a 1-form xi given by orthonormal component fields.
GradedForm wedge1(const std::array<const ScalarField*, 3>& xi, const GradedForm& w);
/// Bilinear contraction i_xi w (no conjugation of xi).
GradedForm contract1(const std::array<const ScalarField*, 3>& xi, const GradedForm& w);
GradedForm wedge1_const(const CovectorShift& xi, const GradedForm& w);
GradedForm contract1_const(const CovectorShift& xi, const GradedForm& w);

// --- exterior calculus ---------------------------------------------------------
GradedForm exterior_d(const ProductChart& chart, const GradedForm& w);
GradedForm codifferential(const ProductChart& chart, const GradedForm& w);
/// Shifted versions d_xi, delta_xi.
GradedForm exterior_d(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi);
GradedForm codifferential(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi);

/// Hodge Dirac operator P = (1/i)(d - delta) (shifted variant uses d_xi, delta_xi).
GradedForm dirac(const ProductChart& chart, const GradedForm& w);
GradedForm dirac(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi);

/// Hodge Laplacian with the sign convention Delta = -(d delta + delta d).
GradedForm hodge_laplacian(const ProductChart& chart, const GradedForm& w);
/// Conjugated -Delta: returns (d_xi delta_xi + delta_xi d_xi) w = e^{-phi}(-Delta)(e^{phi} w).
GradedForm minus_laplacian(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi);
inline GradedForm minus_laplacian(const ProductChart& chart, const GradedForm& w) {
  return minus_laplacian(chart, w, CovectorShift{});
}

// --- inner products ------------------------------------------------------------
/// (U|V) = int_M sum_j <U^j, conj(V^j)> dV; conjugate-linear in V.
cplx inner_product(const ProductChart& chart, const GradedForm& U, const GradedForm& V);
double l2_norm(const ProductChart& chart, const GradedForm& U);
cplx inner_product(const ProductChart& chart, const ScalarField& u, const ScalarField& v);
double l2_norm(const ProductChart& chart, const ScalarField& u);

cplx boundary_inner_product(const ProductChart& chart, const BoundaryGradedForm& U,
                            const BoundaryGradedForm& V,
                            const BoundaryRegion* region = nullptr);
double boundary_l2_norm(const ProductChart& chart, const BoundaryGradedForm& U,
                        const BoundaryRegion* region = nullptr);

// --- traces --------------------------------------------------------------------
struct TraceBundle {
  BoundaryGradedForm t;         // tangential pullback t(w)
  BoundaryGradedForm t_star;    // t(*w)
  BoundaryGradedForm t_inu;     // t(i_nu w)
  BoundaryGradedForm t_dnu_par; // one-sided normal derivative of w_par, pulled back
};
TraceBundle traces(const ProductChart& chart, const GradedForm& w);
BoundaryGradedForm tangential_trace(const ProductChart& chart, const GradedForm& w);

/// Restriction of all 8 components to boundary samples (no projection).
std::array<std::vector<cplx>, 8> boundary_restrict(const ProductChart& chart, const GradedForm& w);

/// w = w_perp + w_par with w_perp = nu ^ i_nu w near the boundary; returns the
/// pointwise split at boundary samples as full graded component vectors.
void perp_par_split(const ProductChart& chart, const GradedForm& w,
                    std::array<std::vector<cplx>, 8>& perp, std::array<std::vector<cplx>, 8>& par);

// --- integration-by-parts defect -------------------------------------------------
/// Max absolute defect of (dU|V) = (nu^U|V)_b + (U|deltaV),
/// (deltaU|V) = -(i_nu U|V)_b + (U|dV), and the four-term Laplacian identity
/// (U|Delta V) - (Delta U|V) = (tU|t i_nu dV) + (t*U|t i_nu d*V) + (t delta U|t i_nu V)
///                              + (t delta *U|t i_nu *V).
double ibp_residual(const ProductChart& chart, const GradedForm& U, const GradedForm& V);

// --- misc -----------------------------------------------------------------------
/// Coordinate function fields on the chart.
ScalarField coordinate_x1(const ProductChart& chart);
ScalarField coordinate_r(const ProductChart& chart);
ScalarField coordinate_theta(const ProductChart& chart);

/// Pointwise bilinear metric pairing of two 1-forms given as component triples.
ScalarField pairing1(const ScalarField& a1, const ScalarField& a2, const ScalarField& a3,
                     const ScalarField& b1, const ScalarField& b2, const ScalarField& b3);

}  // namespace hmx
