#include <doctest.h>

#include <cmath>

#include "hmx/calculus.hpp"
#include "hmx/chart.hpp"
#include "hmx/field.hpp"
#include "hmx/random_fields.hpp"

using namespace hmx;

namespace {

ProductChart flat_chart(int n) {
  GridDims d;
  d.n1 = n;
  d.nr = n;
  d.nth = n;
  d.x1_min = 0.0;
  d.x1_max = 1.0;
  d.r_min = 1.0;
  d.r_max = 2.0;
  return ProductChart(SimpleSurface::flat_disc(2.2), d);
}

ProductChart perturbed_chart(int n) {
  GridDims d;
  d.n1 = n;
  d.nr = n;
  d.nth = n;
  d.x1_min = 0.0;
  d.x1_max = 1.0;
  d.r_min = 1.0;
  d.r_max = 2.0;
  return ProductChart(SimpleSurface::perturbed_flat(0.1, 2.2), d);
}

// Flat metric with a unit-length periodic fiber: dx1^2 + dr^2 + dtheta'^2
// where theta' = theta/(2 pi). Euclidean identities hold verbatim.
ProductChart box_chart(int n, double m0 = 1.0) {
  GridDims d;
  d.n1 = n;
  d.nr = n;
  d.nth = n;
  d.x1_min = 0.0;
  d.x1_max = 1.0;
  d.r_min = 1.0;
  d.r_max = 2.0;
  return ProductChart(SimpleSurface::constant_metric(m0, 2.2), d);
}

double rel_err(const ProductChart& chart, const GradedForm& got, const GradedForm& want) {
  GradedForm diff = got;
  diff -= want;
  const double denom = l2_norm(chart, want);
  return l2_norm(chart, diff) / (denom > 0 ? denom : 1.0);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (auto v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const GradedForm& w) {
  double m = 0.0;
  for (const auto& c : w.comp) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace

TEST_CASE("exterior_d of the coordinate function x1 is the unit coframe e1") {
  const auto chart = flat_chart(12);
  GradedForm w(chart.size());
  w.comp[0] = coordinate_x1(chart);
  const GradedForm dw = exterior_d(chart, w);
  for (std::size_t p = 0; p < chart.size(); ++p) {
    CHECK(std::abs(dw.comp[5][p] - 1.0) < 1e-13);
    CHECK(std::abs(dw.comp[6][p]) < 1e-13);
    CHECK(std::abs(dw.comp[7][p]) < 1e-13);
  }
}

TEST_CASE("d of d vanishes on random smooth forms, boundary rows included") {
  for (bool pert : {false, true}) {
    const auto chart = pert ? perturbed_chart(14) : flat_chart(14);
    SmoothFieldGen gen(42);
    const GradedForm w = gen.graded(chart);
    GradedForm ddw = exterior_d(chart, exterior_d(chart, w));
    // only degrees >= 2 can receive d(d(.)) contributions
    CHECK(l2_norm(chart, ddw) < 1e-11 * l2_norm(chart, w));
  }
}

TEST_CASE("d on the flat chart: r dtheta -> dr ^ dtheta") {
  const auto chart = flat_chart(16);
  // r dtheta has orthonormal e3 component r/sqrt(m) = 1.
  GradedForm w(chart.size());
  for (auto& v : w.comp[7]) v = 1.0;
  const GradedForm dw = exterior_d(chart, w);
  // dr ^ dtheta = (1/r) e2 ^ e3
  const GridDims& d = chart.dims();
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) {
        const std::size_t p = d.idx(i, j, k);
        CHECK(std::abs(dw.comp[3][p] - 1.0 / d.r(j)) < 1e-12);
        CHECK(std::abs(dw.comp[1][p]) < 1e-13);
        CHECK(std::abs(dw.comp[2][p]) < 1e-13);
      }
}

TEST_CASE("d against closed-form monomial derivatives (exact for quadratics)") {
  const auto chart = flat_chart(12);
  const GridDims& d = chart.dims();
  GradedForm u(chart.size());
  u.comp[5] = sample_scalar(chart, [](double x1, double r, double) { return x1 * x1 + r * r; });
  u.comp[6] = sample_scalar(chart, [](double x1, double r, double) { return x1 * r; });
  u.comp[7] = sample_scalar(chart, [](double x1, double r, double) { return x1 + r; });
  const GradedForm du = exterior_d(chart, u);
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) {
        const std::size_t p = d.idx(i, j, k);
        const double x1 = d.x1(i), r = d.r(j);
        CHECK(std::abs(du.comp[1][p] - (r - 2.0 * r)) < 1e-12);       // D1 u2 - D2 u1
        CHECK(std::abs(du.comp[2][p] - 1.0) < 1e-12);                 // (1/r) D1(r u3)
        CHECK(std::abs(du.comp[3][p] - (x1 + 2.0 * r) / r) < 1e-12);  // (1/r) D2(r u3)
      }
}

TEST_CASE("codifferential: Euclidean f dx1 -> -d1 f, and delta delta = 0") {
  const auto chart = box_chart(12);
  GradedForm w(chart.size());
  w.comp[5] = sample_scalar(chart, [](double x1, double r, double) { return x1 * x1 + r; });
  const GradedForm cw = codifferential(chart, w);
  const GridDims& d = chart.dims();
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k)
        CHECK(std::abs(cw.comp[0][d.idx(i, j, k)] - (-2.0 * d.x1(i))) < 1e-12);

  const auto pchart = perturbed_chart(14);
  SmoothFieldGen gen(7);
  const GradedForm z = gen.graded(pchart);
  CHECK(l2_norm(pchart, codifferential(pchart, codifferential(pchart, z))) <
        1e-11 * l2_norm(pchart, z));
}

TEST_CASE("codifferential product rule delta(a dw) = -a Lap w - <da, dw> at O(h^2)") {
  SmoothFieldGen gen(3);
  auto defect = [&](int n) {
    const auto chart = flat_chart(n);
    const ScalarField a =
        sample_scalar(chart, [](double x1, double r, double th) {
          return std::cos(2.0 * x1) * std::sin(r) + 0.3 * std::cos(th);
        });
    const ScalarField w =
        sample_scalar(chart, [](double x1, double r, double th) {
          return std::sin(1.5 * x1 + 0.5) * std::cos(r) + 0.2 * std::sin(th + 0.4 * r);
        });
    GradedForm wf(chart.size());
    wf.comp[0] = w;
    const GradedForm dw = exterior_d(chart, wf);
    GradedForm adw(chart.size());
    for (int c = 5; c < 8; ++c)
      for (std::size_t p = 0; p < chart.size(); ++p) adw.comp[c][p] = a[p] * dw.comp[c][p];
    const GradedForm lhs = codifferential(chart, adw);

    GradedForm af(chart.size());
    af.comp[0] = a;
    const GradedForm da = exterior_d(chart, af);
    const GradedForm lap = hodge_laplacian(chart, wf);
    ScalarField rhs(chart.size());
    for (std::size_t p = 0; p < chart.size(); ++p)
      rhs[p] = -a[p] * lap.comp[0][p] -
               (da.comp[5][p] * dw.comp[5][p] + da.comp[6][p] * dw.comp[6][p] +
                da.comp[7][p] * dw.comp[7][p]);
    ScalarField diff(chart.size());
    for (std::size_t p = 0; p < chart.size(); ++p) diff[p] = lhs.comp[0][p] - rhs[p];
    return l2_norm(chart, diff) / l2_norm(chart, rhs);
  };
  const double e1 = defect(12), e2 = defect(24);
  const double slope = std::log2(e1 / e2);
  CHECK(slope > 1.6);
}

TEST_CASE("hodge star: *1 = vol, *vol = 1, *dx1 = dx2^dx3, isometry, ** = id") {
  const auto chart = box_chart(10);
  GradedForm one(chart.size());
  for (auto& v : one.comp[0]) v = 1.0;
  const GradedForm s = hodge_star(chart, one);
  for (std::size_t p = 0; p < chart.size(); ++p) CHECK(std::abs(s.comp[4][p] - 1.0) < 1e-15);
  const GradedForm ss = hodge_star(chart, s);
  for (std::size_t p = 0; p < chart.size(); ++p) CHECK(std::abs(ss.comp[0][p] - 1.0) < 1e-15);

  GradedForm dx1(chart.size());
  for (auto& v : dx1.comp[5]) v = 1.0;
  const GradedForm sdx1 = hodge_star(chart, dx1);
  for (std::size_t p = 0; p < chart.size(); ++p) CHECK(std::abs(sdx1.comp[3][p] - 1.0) < 1e-15);

  SmoothFieldGen gen(11);
  const GradedForm u = gen.graded(chart);
  const GradedForm v = gen.graded(chart);
  const GradedForm su = hodge_star(chart, u), sv = hodge_star(chart, v);
  // pointwise isometry <*u,*v> = <u,v>
  for (std::size_t p = 0; p < chart.size(); p += 17) {
    cplx lhs{}, rhs{};
    for (int c = 0; c < 8; ++c) {
      lhs += su.comp[c][p] * std::conj(sv.comp[c][p]);
      rhs += u.comp[c][p] * std::conj(v.comp[c][p]);
    }
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
  const GradedForm uu = hodge_star(chart, su);
  CHECK(rel_err(chart, uu, u) < 1e-15);
}

TEST_CASE("wedge/contraction duality <xi^u, v> = <u, i_xi v> pointwise") {
  const auto chart = perturbed_chart(10);
  SmoothFieldGen gen(5);
  const GradedForm u = gen.graded(chart);
  const GradedForm v = gen.graded(chart);
  ScalarField x1 = gen.scalar(chart), x2 = gen.scalar(chart), x3 = gen.scalar(chart);
  for (auto* f : {&x1, &x2, &x3})
    for (auto& z : *f) z = z.real();  // real covector
  const GradedForm wu = wedge1({&x1, &x2, &x3}, u);
  const GradedForm cv = contract1({&x1, &x2, &x3}, v);
  for (std::size_t p = 0; p < chart.size(); p += 13) {
    cplx lhs{}, rhs{};
    for (int c = 0; c < 8; ++c) {
      lhs += wu.comp[c][p] * std::conj(v.comp[c][p]);
      rhs += u.comp[c][p] * std::conj(cv.comp[c][p]);
    }
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("hodge laplacian: x1^2 -> 2, commutes with star, plane-wave symbol") {
  const auto chart = flat_chart(12);
  GradedForm w(chart.size());
  w.comp[0] = sample_scalar(chart, [](double x1, double, double) { return x1 * x1; });
  const GradedForm lw = hodge_laplacian(chart, w);
  for (std::size_t p = 0; p < chart.size(); ++p) CHECK(std::abs(lw.comp[0][p] - 2.0) < 1e-11);

  SmoothFieldGen gen(9);
  const GradedForm u = gen.graded(chart);
  const GradedForm a = hodge_star(chart, hodge_laplacian(chart, u));
  const GradedForm b = hodge_laplacian(chart, hodge_star(chart, u));
  CHECK(rel_err(chart, a, b) * l2_norm(chart, b) <= 1e-10 * l2_norm(chart, u));

  // plane wave on the Euclidean box chart: Lap e^{i(a x1 + b r)} = -(a^2+b^2) e^{...}
  auto err_at = [&](int n) {
    const auto box = box_chart(n);
    const double ka = 2.0, kb = 3.0;
    GradedForm pw(box.size());
    pw.comp[0] = sample_scalar(box, [&](double x1, double r, double) {
      return std::polar(1.0, ka * x1 + kb * r);
    });
    const GradedForm lap = hodge_laplacian(box, pw);
    GradedForm want(box.size());
    for (std::size_t p = 0; p < box.size(); ++p)
      want.comp[0][p] = -(ka * ka + kb * kb) * pw.comp[0][p];
    return rel_err(box, lap, want);
  };
  const double e1 = err_at(12), e2 = err_at(24);
  CHECK(std::log2(e1 / e2) > 1.6);
}

TEST_CASE("inner product: positivity, conjugate symmetry, unit-cube volume") {
  const auto chart = perturbed_chart(10);
  SmoothFieldGen gen(13);
  const GradedForm u = gen.graded(chart);
  const GradedForm v = gen.graded(chart);
  const cplx uu = inner_product(chart, u, u);
  CHECK(uu.real() > 0.0);
  CHECK(std::abs(uu.imag()) < 1e-12 * uu.real());
  const cplx uv = inner_product(chart, u, v);
  const cplx vu = inner_product(chart, v, u);
  CHECK(std::abs(uv - std::conj(vu)) < 1e-12 * std::abs(uv));

  GradedForm zero(chart.size());
  CHECK(std::abs(inner_product(chart, zero, zero)) == 0.0);

  // metric unit cube: x1, r extents 1, fiber length 2 pi sqrt(m0) = 1
  const double m0 = 1.0 / (4.0 * kPi * kPi);
  const auto cube = box_chart(10, m0);
  GradedForm dx1(cube.size());
  for (auto& z : dx1.comp[5]) z = 1.0;
  CHECK(std::abs(inner_product(cube, dx1, dx1) - 1.0) < 1e-13);
}

TEST_CASE("traces: vanishing boundary values, perp/par split, t(du) on a face") {
  const auto chart = flat_chart(12);
  SmoothFieldGen gen(21);
  GradedForm w = gen.graded(chart);
  // kill w at the boundary with a separable bump
  const ScalarField bump = sample_scalar(chart, [&](double x1, double r, double) {
    const double s1 = std::sin(kPi * x1);
    const double sr = std::sin(kPi * (r - 1.0));
    return s1 * s1 * sr * sr;
  });
  for (auto& c : w.comp)
    for (std::size_t p = 0; p < c.size(); ++p) c[p] *= bump[p];

  const TraceBundle tb = traces(chart, w);
  const double scale = l2_norm(chart, w);
  CHECK(boundary_l2_norm(chart, tb.t) < 1e-12 * scale);
  CHECK(boundary_l2_norm(chart, tb.t_inu) < 1e-12 * scale);

  std::array<std::vector<cplx>, 8> perp, par;
  perp_par_split(chart, gen.graded(chart), perp, par);
  // the parallel slots of perp are identically zero; perp+par = restriction
  for (std::size_t f = 0; f < chart.boundary_size(); ++f) {
    const auto s = chart.boundary_sample(f);
    (void)s;
    cplx tangential_mass{};
    for (int c : {0}) tangential_mass += perp[c][f];
    CHECK(std::abs(tangential_mass) == 0.0);
  }

  // tu = 0 on a face forces t(du) = 0 there (tangential stencils only)
  GradedForm v = gen.graded(chart);
  const ScalarField lin = coordinate_x1(chart);
  for (auto& c : v.comp)
    for (std::size_t p = 0; p < c.size(); ++p) c[p] *= lin[p];
  const BoundaryGradedForm tdv = tangential_trace(chart, exterior_d(chart, v));
  double face_max = 0.0;
  for (std::size_t f = chart.boundary_face_offset(Face::X1Min);
       f < chart.boundary_face_offset(Face::X1Max); ++f)
    for (int c = 0; c < 4; ++c) face_max = std::max(face_max, std::abs(tdv.comp[c][f]));
  CHECK(face_max < 1e-12 * max_abs(v));
}

TEST_CASE("integration by parts defects vanish for constants and refine at O(h)") {
  const auto chart = flat_chart(12);
  GradedForm cu(chart.size()), cv(chart.size());
  for (auto& z : cu.comp[0]) z = 2.5;
  for (auto& z : cv.comp[0]) z = cplx(0.5, -1.0);
  CHECK(ibp_residual(chart, cu, cv) < 1e-14);

  SmoothFieldGen gen(33);
  // compactly supported U: boundary terms vanish identically, and the interior
  // quadrature defect refines away
  auto interior_defect = [&](int n) {
    const auto c2 = flat_chart(n);
    SmoothFieldGen g(33);
    GradedForm u = g.graded(c2);
    const ScalarField bump = sample_scalar(c2, [&](double x1, double r, double) {
      const double s1 = std::sin(kPi * x1);
      const double sr = std::sin(kPi * (r - 1.0));
      return s1 * s1 * s1 * sr * sr * sr;
    });
    for (auto& c : u.comp)
      for (std::size_t p = 0; p < c.size(); ++p) c[p] *= bump[p];
    const auto rest = boundary_restrict(c2, u);
    double bmax = 0.0;
    for (const auto& comp : rest)
      for (auto z : comp) bmax = std::max(bmax, std::abs(z));
    CHECK(bmax < 1e-30);
    const GradedForm v = g.graded(c2);
    return ibp_residual(c2, u, v);
  };
  CHECK(std::log2(interior_defect(12) / interior_defect(24)) > 0.9);

  auto defect = [&](int n) {
    const auto c = flat_chart(n);
    SmoothFieldGen g(17);
    const GradedForm u = g.graded(c);
    const GradedForm v = g.graded(c);
    return ibp_residual(c, u, v);
  };
  const double e1 = defect(12), e2 = defect(24);
  CHECK(std::log2(e1 / e2) > 0.9);
}

TEST_CASE("dirac operator is self-adjoint up to the boundary term") {
  auto defect = [&](int n) {
    const auto chart = perturbed_chart(n);
    SmoothFieldGen gen(51);
    const GradedForm u = gen.graded(chart);
    const GradedForm v = gen.graded(chart);
    const cplx lhs = inner_product(chart, dirac(chart, u), v) - inner_product(chart, u, dirac(chart, v));
    // boundary term (1/i)((nu^ + i_nu)u | v)_bdry
    auto ub = boundary_restrict(chart, u);
    auto vb = boundary_restrict(chart, v);
    cplx bterm{};
    for (std::size_t f = 0; f < chart.boundary_size(); ++f) {
      const auto s = chart.boundary_sample(f);
      const auto [axis, sign] = chart.normal(s);
      CovectorShift nu;
      if (axis == 0)
        nu.c1 = sign;
      else
        nu.c2 = sign;
      // pointwise (nu^ + i_nu) u
      std::array<cplx, 8> uu{}, acc{};
      for (int c = 0; c < 8; ++c) uu[c] = ub[c][f];
      // wedge part
      acc[5] += nu.c1 * uu[0];
      acc[6] += nu.c2 * uu[0];
      acc[1] += nu.c1 * uu[6] - nu.c2 * uu[5];
      acc[2] += nu.c1 * uu[7];
      acc[3] += nu.c2 * uu[7];
      acc[4] += nu.c1 * uu[3] - nu.c2 * uu[2];
      // contraction part
      acc[0] += nu.c1 * uu[5] + nu.c2 * uu[6];
      acc[5] += -nu.c2 * uu[1];
      acc[6] += nu.c1 * uu[1];
      acc[7] += nu.c1 * uu[2] + nu.c2 * uu[3];
      acc[2] += -nu.c2 * uu[4];
      acc[3] += nu.c1 * uu[4];
      cplx dot{};
      for (int c = 0; c < 8; ++c) dot += acc[c] * std::conj(vb[c][f]);
      bterm += chart.boundary_quad_weight(f) * dot;
    }
    bterm *= cplx(0.0, -1.0);
    return std::abs(lhs - bterm);
  };
  const double e1 = defect(10), e2 = defect(20);
  CHECK(std::log2(e1 / e2) > 0.9);
}

TEST_CASE("shifted operators: conjugation identities on 0-forms") {
  const auto chart = box_chart(12);
  const double tau = 3.0;
  SmoothFieldGen gen(61);
  const GradedForm z = gen.graded(chart);
  // d_xi delta_xi + delta_xi d_xi on a 0-form f equals -Lap f - 2 tau d1 f - tau^2 f
  GradedForm f(chart.size());
  f.comp[0] = gen.scalar(chart);
  const GradedForm lhs = minus_laplacian(chart, f, CovectorShift::real_x1(tau));
  ScalarField d1f;
  diff_x1(chart, f.comp[0], d1f);
  const GradedForm lap = hodge_laplacian(chart, f);
  ScalarField want(chart.size());
  for (std::size_t p = 0; p < chart.size(); ++p)
    want[p] = -lap.comp[0][p] - 2.0 * tau * d1f[p] - tau * tau * f.comp[0][p];
  ScalarField diff(chart.size());
  for (std::size_t p = 0; p < chart.size(); ++p) diff[p] = lhs.comp[0][p] - want[p];
  CHECK(l2_norm(chart, diff) < 1e-11 * l2_norm(chart, want));

  // null covector tau(e1 + i e2): the tau^2 term drops for any graded input
  const CovectorShift xi = CovectorShift::cgo_phase(tau);
  const GradedForm a = minus_laplacian(chart, z, xi);
  const GradedForm b = minus_laplacian(chart, z, CovectorShift::cgo_phase(2.0 * tau));
  // grows at most linearly in tau
  CHECK(l2_norm(chart, b) < 2.6 * l2_norm(chart, a) + 1e-12);
}
