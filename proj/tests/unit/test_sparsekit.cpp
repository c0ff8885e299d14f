#include <doctest.h>

#include <cmath>

#include "hmx/calculus.hpp"
#include "hmx/random_fields.hpp"
#include "hmx/sparsekit.hpp"

using namespace hmx;

namespace {

ProductChart pert_chart(int n) {
  GridDims d;
  d.n1 = n;
  d.nr = n;
  d.nth = n;
  d.x1_min = 0.0;
  d.x1_max = 1.0;
  d.r_min = 1.0;
  d.r_max = 2.0;
  return ProductChart(SimpleSurface::perturbed_flat(0.15, 2.2), d);
}

}  // namespace

TEST_CASE("assembled matrices reproduce the apply path") {
  const auto chart = pert_chart(8);
  SmoothFieldGen gen(101);
  const GradedForm w = gen.graded(chart);
  const CVec v = pack(w);

  const SpMat D = exterior_d_matrix(chart);
  const GradedForm dw = exterior_d(chart, w);
  CHECK((D * v - pack(dw)).norm() < 1e-12 * pack(dw).norm());

  const SpMat C = codifferential_matrix(chart);
  const GradedForm cw = codifferential(chart, w);
  CHECK((C * v - pack(cw)).norm() < 1e-12 * pack(cw).norm());

  const CovectorShift xi = CovectorShift::cgo_phase(2.5);
  const SpMat P = dirac_matrix(chart, xi);
  const GradedForm pw = dirac(chart, w, xi);
  CHECK((P * v - pack(pw)).norm() < 1e-12 * pack(pw).norm());
}

TEST_CASE("sparse LU solves a shifted positive system") {
  const auto chart = pert_chart(8);
  // A = (d delta + delta d) + 4 = -Delta + 4: positive definite-ish
  SpMat D = exterior_d_matrix(chart);
  SpMat C = codifferential_matrix(chart);
  SpMat L = SpMat(D * C) + SpMat(C * D);
  SpMat I(L.rows(), L.cols());
  I.setIdentity();
  SpMat A = L + SpMat(4.0 * I);

  SmoothFieldGen gen(7);
  const GradedForm x0 = gen.graded(chart);
  const CVec b = A * pack(x0);
  LinearSolver solver(A);
  SolverReport rep;
  const CVec x = solver.solve(b, &rep);
  CHECK(rep.residual < 1e-9);
  CHECK((x - pack(x0)).norm() < 1e-8 * pack(x0).norm());
  CHECK(solver.invcond_proxy(2) > 0.0);
}
