#include "hmx/calculus.hpp"

#include <cmath>
#include <cstdlib>

namespace hmx {

namespace {

inline void mul_fields(const ScalarField& a, const std::vector<double>& s, ScalarField& out) {
  const std::size_t n = a.size();
  out.resize(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = a[p] * s[p];
}

inline void div_fields(const ScalarField& a, const std::vector<double>& s, ScalarField& out) {
  const std::size_t n = a.size();
  out.resize(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = a[p] / s[p];
}

}  // namespace

void diff_x1(const ProductChart& chart, const ScalarField& f, ScalarField& out) {
  const GridDims& d = chart.dims();
  const double ih = 1.0 / (2.0 * d.h1());
  out.resize(f.size());
  const std::size_t stride = static_cast<std::size_t>(d.nr) * d.nth;
  for (int i = 0; i < d.n1; ++i) {
    for (std::size_t q = 0; q < stride; ++q) {
      const std::size_t p = i * stride + q;
      if (i == 0) {
        out[p] = (-3.0 * f[p] + 4.0 * f[p + stride] - f[p + 2 * stride]) * ih;
      } else if (i == d.n1 - 1) {
        out[p] = (3.0 * f[p] - 4.0 * f[p - stride] + f[p - 2 * stride]) * ih;
      } else {
        out[p] = (f[p + stride] - f[p - stride]) * ih;
      }
    }
  }
}

void diff_r(const ProductChart& chart, const ScalarField& f, ScalarField& out) {
  const GridDims& d = chart.dims();
  const double ih = 1.0 / (2.0 * d.hr());
  out.resize(f.size());
  const std::size_t stride = d.nth;
  for (int i = 0; i < d.n1; ++i) {
    const std::size_t base = static_cast<std::size_t>(i) * d.nr * d.nth;
    for (int j = 0; j < d.nr; ++j) {
      for (int k = 0; k < d.nth; ++k) {
        const std::size_t p = base + static_cast<std::size_t>(j) * d.nth + k;
        if (j == 0) {
          out[p] = (-3.0 * f[p] + 4.0 * f[p + stride] - f[p + 2 * stride]) * ih;
        } else if (j == d.nr - 1) {
          out[p] = (3.0 * f[p] - 4.0 * f[p - stride] + f[p - 2 * stride]) * ih;
        } else {
          out[p] = (f[p + stride] - f[p - stride]) * ih;
        }
      }
    }
  }
}

void diff_theta(const ProductChart& chart, const ScalarField& f, ScalarField& out) {
  const GridDims& d = chart.dims();
  const double ih = 1.0 / (2.0 * d.hth());
  out.resize(f.size());
  const int nth = d.nth;
  const std::size_t rows = static_cast<std::size_t>(d.n1) * d.nr;
  for (std::size_t row = 0; row < rows; ++row) {
    const std::size_t base = row * nth;
    for (int k = 0; k < nth; ++k) {
      const int kp = (k + 1 == nth) ? 0 : k + 1;
      const int km = (k == 0) ? nth - 1 : k - 1;
      out[base + k] = (f[base + kp] - f[base + km]) * ih;
    }
  }
}

GradedForm hodge_star(const ProductChart&, const GradedForm& w) {
  const std::size_t n = w.size();
  GradedForm out(n);
  for (std::size_t p = 0; p < n; ++p) {
    out.comp[4][p] = w.comp[0][p];                     // *1 = vol
    out.comp[0][p] = w.comp[4][p];                     // *vol = 1
    out.comp[1][p] = w.comp[5 + 2][p];                 // *(e3) = e1^e2
    out.comp[2][p] = -w.comp[5 + 1][p];                // *(e2) = -e1^e3
    out.comp[3][p] = w.comp[5 + 0][p];                 // *(e1) = e2^e3
    out.comp[5 + 0][p] = w.comp[3][p];                 // *(e2^e3) = e1
    out.comp[5 + 1][p] = -w.comp[2][p];                // *(e1^e3) = -e2
    out.comp[5 + 2][p] = w.comp[1][p];                 // *(e1^e2) = e3
  }
  return out;
}

namespace {

template <class Xi1, class Xi2, class Xi3>
GradedForm wedge1_impl(Xi1 x1, Xi2 x2, Xi3 x3, const GradedForm& w) {
  const std::size_t n = w.size();
  GradedForm out(n);
  for (std::size_t p = 0; p < n; ++p) {
    const cplx f = w.comp[0][p];
    const cplx u1 = w.comp[5][p], u2 = w.comp[6][p], u3 = w.comp[7][p];
    const cplx w12 = w.comp[1][p], w13 = w.comp[2][p], w23 = w.comp[3][p];
    const cplx c1 = x1(p), c2 = x2(p), c3 = x3(p);
    out.comp[5][p] = c1 * f;
    out.comp[6][p] = c2 * f;
    out.comp[7][p] = c3 * f;
    out.comp[1][p] = c1 * u2 - c2 * u1;
    out.comp[2][p] = c1 * u3 - c3 * u1;
    out.comp[3][p] = c2 * u3 - c3 * u2;
    out.comp[4][p] = c3 * w12 - c2 * w13 + c1 * w23;
  }
  return out;
}

template <class Xi1, class Xi2, class Xi3>
GradedForm contract1_impl(Xi1 x1, Xi2 x2, Xi3 x3, const GradedForm& w) {
  const std::size_t n = w.size();
  GradedForm out(n);
  for (std::size_t p = 0; p < n; ++p) {
    const cplx u1 = w.comp[5][p], u2 = w.comp[6][p], u3 = w.comp[7][p];
    const cplx w12 = w.comp[1][p], w13 = w.comp[2][p], w23 = w.comp[3][p];
    const cplx psi = w.comp[4][p];
    const cplx c1 = x1(p), c2 = x2(p), c3 = x3(p);
    out.comp[0][p] = c1 * u1 + c2 * u2 + c3 * u3;
    out.comp[5][p] = -c2 * w12 - c3 * w13;
    out.comp[6][p] = c1 * w12 - c3 * w23;
    out.comp[7][p] = c1 * w13 + c2 * w23;
    out.comp[1][p] = c3 * psi;
    out.comp[2][p] = -c2 * psi;
    out.comp[3][p] = c1 * psi;
  }
  return out;
}

}  // namespace

GradedForm wedge1(const std::array<const ScalarField*, 3>& xi, const GradedForm& w) {
  return wedge1_impl([&](std::size_t p) { return (*xi[0])[p]; },
                     [&](std::size_t p) { return (*xi[1])[p]; },
                     [&](std::size_t p) { return (*xi[2])[p]; }, w);
}

GradedForm contract1(const std::array<const ScalarField*, 3>& xi, const GradedForm& w) {
  return contract1_impl([&](std::size_t p) { return (*xi[0])[p]; },
                        [&](std::size_t p) { return (*xi[1])[p]; },
                        [&](std::size_t p) { return (*xi[2])[p]; }, w);
}

GradedForm wedge1_const(const CovectorShift& xi, const GradedForm& w) {
  return wedge1_impl([&](std::size_t) { return xi.c1; }, [&](std::size_t) { return xi.c2; },
                     [&](std::size_t) { return xi.c3; }, w);
}

GradedForm contract1_const(const CovectorShift& xi, const GradedForm& w) {
  return contract1_impl([&](std::size_t) { return xi.c1; }, [&](std::size_t) { return xi.c2; },
                        [&](std::size_t) { return xi.c3; }, w);
}

GradedForm exterior_d(const ProductChart& chart, const GradedForm& w) {
  const std::size_t n = w.size();
  const auto& a1 = chart.a1();
  const auto& a2 = chart.a2();
  const auto& a3 = chart.a3();
  GradedForm out(n);
  ScalarField tmp(n), da(n), db(n), dc(n);

  // 0-form -> 1-form
  diff_x1(chart, w.comp[0], da);
  diff_r(chart, w.comp[0], db);
  diff_theta(chart, w.comp[0], dc);
  for (std::size_t p = 0; p < n; ++p) {
    out.comp[5][p] = da[p] / a1[p];
    out.comp[6][p] = db[p] / a2[p];
    out.comp[7][p] = dc[p] / a3[p];
  }

  // 1-form -> 2-form: (du)_ij = (D_i(a_j u_j) - D_j(a_i u_i)) / (a_i a_j)
  {
    ScalarField s1(n), s2(n), s3(n);
    mul_fields(w.comp[5], a1, s1);
    mul_fields(w.comp[6], a2, s2);
    mul_fields(w.comp[7], a3, s3);
    diff_x1(chart, s2, da);
    diff_r(chart, s1, db);
    for (std::size_t p = 0; p < n; ++p) out.comp[1][p] = (da[p] - db[p]) / (a1[p] * a2[p]);
    diff_x1(chart, s3, da);
    diff_theta(chart, s1, db);
    for (std::size_t p = 0; p < n; ++p) out.comp[2][p] = (da[p] - db[p]) / (a1[p] * a3[p]);
    diff_r(chart, s3, da);
    diff_theta(chart, s2, db);
    for (std::size_t p = 0; p < n; ++p) out.comp[3][p] = (da[p] - db[p]) / (a2[p] * a3[p]);
  }

  // 2-form -> 3-form
  {
    ScalarField s12(n), s13(n), s23(n);
    for (std::size_t p = 0; p < n; ++p) {
      s12[p] = w.comp[1][p] * (a1[p] * a2[p]);
      s13[p] = w.comp[2][p] * (a1[p] * a3[p]);
      s23[p] = w.comp[3][p] * (a2[p] * a3[p]);
    }
    diff_x1(chart, s23, da);
    diff_r(chart, s13, db);
    diff_theta(chart, s12, dc);
    for (std::size_t p = 0; p < n; ++p)
      out.comp[4][p] = (da[p] - db[p] + dc[p]) / (a1[p] * a2[p] * a3[p]);
  }
  return out;
}

GradedForm codifferential(const ProductChart& chart, const GradedForm& w) {
  const std::size_t n = w.size();
  GradedForm out(n);

  // delta on each degree via the sign rule delta = (-1)^{(k-1)(n-k)+1} * d * .
  // n = 3: signs are -1, +1, -1 for k = 1, 2, 3.
  auto accumulate_degree = [&](int degree, double sign) {
    GradedForm part(n);
    if (degree == 1) {
      for (int c = 5; c < 8; ++c) part.comp[c] = w.comp[c];
    } else if (degree == 2) {
      for (int c = 1; c < 4; ++c) part.comp[c] = w.comp[c];
    } else {
      part.comp[4] = w.comp[4];
    }
    GradedForm res = hodge_star(chart, exterior_d(chart, hodge_star(chart, part)));
    const int out_slot0 = (degree == 1) ? 0 : (degree == 2 ? 5 : 1);
    const int width = (degree == 1) ? 1 : 3;
    for (int c = 0; c < width; ++c)
      for (std::size_t p = 0; p < n; ++p) out.comp[out_slot0 + c][p] += sign * res.comp[out_slot0 + c][p];
  };
  accumulate_degree(1, -1.0);
  accumulate_degree(2, +1.0);
  accumulate_degree(3, -1.0);
  return out;
}

GradedForm exterior_d(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi) {
  GradedForm out = exterior_d(chart, w);
  if (!xi.zero()) out += wedge1_const(xi, w);
  return out;
}

GradedForm codifferential(const ProductChart& chart, const GradedForm& w,
                          const CovectorShift& xi) {
  GradedForm out = codifferential(chart, w);
  if (!xi.zero()) out -= contract1_const(xi, w);
  return out;
}

GradedForm dirac(const ProductChart& chart, const GradedForm& w) {
  return dirac(chart, w, CovectorShift{});
}

GradedForm dirac(const ProductChart& chart, const GradedForm& w, const CovectorShift& xi) {
  GradedForm dw = exterior_d(chart, w, xi);
  GradedForm cw = codifferential(chart, w, xi);
  const std::size_t n = w.size();
  GradedForm out(n);
  const cplx minus_i(0.0, -1.0);  // 1/i
  for (int c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < n; ++p) out.comp[c][p] = minus_i * (dw.comp[c][p] - cw.comp[c][p]);
  return out;
}

GradedForm minus_laplacian(const ProductChart& chart, const GradedForm& w,
                           const CovectorShift& xi) {
  GradedForm a = exterior_d(chart, codifferential(chart, w, xi), xi);
  GradedForm b = codifferential(chart, exterior_d(chart, w, xi), xi);
  a += b;
  return a;
}

GradedForm hodge_laplacian(const ProductChart& chart, const GradedForm& w) {
  GradedForm out = minus_laplacian(chart, w, CovectorShift{});
  out *= cplx(-1.0, 0.0);
  return out;
}

cplx inner_product(const ProductChart& chart, const GradedForm& U, const GradedForm& V) {
  const auto& wq = chart.quad_weight();
  cplx acc(0.0, 0.0);
  for (int c = 0; c < 8; ++c) {
    const auto& u = U.comp[c];
    const auto& v = V.comp[c];
    for (std::size_t p = 0; p < u.size(); ++p) acc += wq[p] * u[p] * std::conj(v[p]);
  }
  return acc;
}

double l2_norm(const ProductChart& chart, const GradedForm& U) {
  const auto& wq = chart.quad_weight();
  double acc = 0.0;
  for (int c = 0; c < 8; ++c) {
    const auto& u = U.comp[c];
    for (std::size_t p = 0; p < u.size(); ++p) acc += wq[p] * std::norm(u[p]);
  }
  return std::sqrt(acc);
}

cplx inner_product(const ProductChart& chart, const ScalarField& u, const ScalarField& v) {
  const auto& wq = chart.quad_weight();
  cplx acc(0.0, 0.0);
  for (std::size_t p = 0; p < u.size(); ++p) acc += wq[p] * u[p] * std::conj(v[p]);
  return acc;
}

double l2_norm(const ProductChart& chart, const ScalarField& u) {
  const auto& wq = chart.quad_weight();
  double acc = 0.0;
  for (std::size_t p = 0; p < u.size(); ++p) acc += wq[p] * std::norm(u[p]);
  return std::sqrt(acc);
}

cplx boundary_inner_product(const ProductChart& chart, const BoundaryGradedForm& U,
                            const BoundaryGradedForm& V, const BoundaryRegion* region) {
  cplx acc(0.0, 0.0);
  for (std::size_t f = 0; f < chart.boundary_size(); ++f) {
    if (region && !region->mask[f]) continue;
    const double w = chart.boundary_quad_weight(f);
    for (int c = 0; c < 4; ++c) acc += w * U.comp[c][f] * std::conj(V.comp[c][f]);
  }
  return acc;
}

double boundary_l2_norm(const ProductChart& chart, const BoundaryGradedForm& U,
                        const BoundaryRegion* region) {
  double acc = 0.0;
  for (std::size_t f = 0; f < chart.boundary_size(); ++f) {
    if (region && !region->mask[f]) continue;
    const double w = chart.boundary_quad_weight(f);
    for (int c = 0; c < 4; ++c) acc += w * std::norm(U.comp[c][f]);
  }
  return std::sqrt(acc);
}

std::array<std::vector<cplx>, 8> boundary_restrict(const ProductChart& chart,
                                                   const GradedForm& w) {
  std::array<std::vector<cplx>, 8> out;
  const std::size_t nb = chart.boundary_size();
  for (auto& c : out) c.resize(nb);
  for (std::size_t f = 0; f < nb; ++f) {
    const std::size_t p = chart.grid_index(chart.boundary_sample(f));
    for (int c = 0; c < 8; ++c) out[c][f] = w.comp[c][p];
  }
  return out;
}

namespace {

// Tangential projection table per face type. On x1 faces the tangential frame
// is (e2, e3); on r faces it is (e1, e3).
struct FaceSlots {
  int one_a, one_b;   // tangential 1-form slots
  int two_tt;         // tangent-tangent 2-form slot
  int one_n;          // normal 1-form slot
  int two_na, two_nb; // 2-form slots with one normal leg, ordered to pair (one_a, one_b)
  double sgn_na, sgn_nb;  // contraction signs for those 2-form slots
  double sgn_vol;         // sign of the two_tt component of i_n(vol)
};

FaceSlots face_slots(Face face) {
  if (face == Face::X1Min || face == Face::X1Max) {
    // normal e1: perp 2-form slots (12),(13) pair with e2,e3; tangential 2-form (23).
    return {6, 7, 3, 5, 1, 2, +1.0, +1.0, +1.0};
  }
  // normal e2: perp 2-form slots (12),(23) pair with e1,e3; tangential 2-form (13).
  return {5, 7, 2, 6, 1, 3, -1.0, +1.0, -1.0};
}

}  // namespace

BoundaryGradedForm tangential_trace(const ProductChart& chart, const GradedForm& w) {
  const std::size_t nb = chart.boundary_size();
  BoundaryGradedForm out(nb);
  for (std::size_t f = 0; f < nb; ++f) {
    const BoundarySample s = chart.boundary_sample(f);
    const std::size_t p = chart.grid_index(s);
    const FaceSlots fs = face_slots(s.face);
    out.comp[0][f] = w.comp[0][p];
    out.comp[1][f] = w.comp[fs.one_a][p];
    out.comp[2][f] = w.comp[fs.one_b][p];
    out.comp[3][f] = w.comp[fs.two_tt][p];
  }
  return out;
}

TraceBundle traces(const ProductChart& chart, const GradedForm& w) {
  const GridDims& d = chart.dims();
  const std::size_t nb = chart.boundary_size();
  TraceBundle out{BoundaryGradedForm(nb), BoundaryGradedForm(nb), BoundaryGradedForm(nb),
                  BoundaryGradedForm(nb)};
  out.t = tangential_trace(chart, w);
  out.t_star = tangential_trace(chart, hodge_star(chart, w));

  const double ih1 = 1.0 / (2.0 * d.h1());
  const double ihr = 1.0 / (2.0 * d.hr());
  for (std::size_t f = 0; f < nb; ++f) {
    const BoundarySample s = chart.boundary_sample(f);
    const std::size_t p = chart.grid_index(s);
    const FaceSlots fs = face_slots(s.face);
    const auto [axis, sign] = chart.normal(s);

    // t(i_nu w): degree k of i_nu w comes from degree k+1 of w.
    out.t_inu.comp[0][f] = sign * w.comp[fs.one_n][p];
    out.t_inu.comp[1][f] = sign * fs.sgn_na * w.comp[fs.two_na][p];
    out.t_inu.comp[2][f] = sign * fs.sgn_nb * w.comp[fs.two_nb][p];
    out.t_inu.comp[3][f] = sign * fs.sgn_vol * w.comp[4][p];

    // one-sided outward normal derivative of the parallel part, componentwise.
    auto dnu = [&](int slot) -> cplx {
      const auto& c = w.comp[slot];
      if (axis == 0) {
        const std::size_t stride = static_cast<std::size_t>(d.nr) * d.nth;
        if (sign < 0)
          return (-3.0 * c[p] + 4.0 * c[p + stride] - c[p + 2 * stride]) * (-ih1);
        return (3.0 * c[p] - 4.0 * c[p - stride] + c[p - 2 * stride]) * ih1;
      }
      const std::size_t stride = d.nth;
      if (sign < 0) return (-3.0 * c[p] + 4.0 * c[p + stride] - c[p + 2 * stride]) * (-ihr);
      return (3.0 * c[p] - 4.0 * c[p - stride] + c[p - 2 * stride]) * ihr;
    };
    out.t_dnu_par.comp[0][f] = dnu(0);
    out.t_dnu_par.comp[1][f] = dnu(fs.one_a);
    out.t_dnu_par.comp[2][f] = dnu(fs.one_b);
    out.t_dnu_par.comp[3][f] = dnu(fs.two_tt);
  }
  return out;
}

void perp_par_split(const ProductChart& chart, const GradedForm& w,
                    std::array<std::vector<cplx>, 8>& perp,
                    std::array<std::vector<cplx>, 8>& par) {
  const std::size_t nb = chart.boundary_size();
  for (auto& c : perp) c.assign(nb, cplx{});
  for (auto& c : par) c.assign(nb, cplx{});
  for (std::size_t f = 0; f < nb; ++f) {
    const BoundarySample s = chart.boundary_sample(f);
    const std::size_t p = chart.grid_index(s);
    const FaceSlots fs = face_slots(s.face);
    // perp slots: normal 1-form component, the two 2-form slots with a normal
    // leg, and the 3-form; everything else is parallel.
    par[0][f] = w.comp[0][p];
    par[fs.one_a][f] = w.comp[fs.one_a][p];
    par[fs.one_b][f] = w.comp[fs.one_b][p];
    par[fs.two_tt][f] = w.comp[fs.two_tt][p];
    perp[fs.one_n][f] = w.comp[fs.one_n][p];
    perp[fs.two_na][f] = w.comp[fs.two_na][p];
    perp[fs.two_nb][f] = w.comp[fs.two_nb][p];
    perp[4][f] = w.comp[4][p];
  }
}

namespace {

// Full 8-component boundary pairing int_bdry sum_c X_c conj(Y_c) dS where X, Y
// are boundary restrictions of graded forms.
cplx full_boundary_pairing(const ProductChart& chart, const std::array<std::vector<cplx>, 8>& X,
                           const std::array<std::vector<cplx>, 8>& Y) {
  cplx acc(0.0, 0.0);
  for (std::size_t f = 0; f < chart.boundary_size(); ++f) {
    const double w = chart.boundary_quad_weight(f);
    for (int c = 0; c < 8; ++c) acc += w * X[c][f] * std::conj(Y[c][f]);
  }
  return acc;
}

// nu ^ X and i_nu X at boundary samples for restrictions X.
void normal_wedge_contract(const ProductChart& chart, const std::array<std::vector<cplx>, 8>& X,
                           std::array<std::vector<cplx>, 8>& nuwedge,
                           std::array<std::vector<cplx>, 8>& nucontr) {
  const std::size_t nb = chart.boundary_size();
  for (auto& c : nuwedge) c.assign(nb, cplx{});
  for (auto& c : nucontr) c.assign(nb, cplx{});
  for (std::size_t f = 0; f < nb; ++f) {
    const BoundarySample s = chart.boundary_sample(f);
    const auto [axis, sign] = chart.normal(s);
    const cplx n1 = (axis == 0) ? cplx(sign, 0.0) : cplx(0.0, 0.0);
    const cplx n2 = (axis == 1) ? cplx(sign, 0.0) : cplx(0.0, 0.0);
    const cplx u1 = X[5][f], u2 = X[6][f], u3 = X[7][f];
    const cplx w12 = X[1][f], w13 = X[2][f], w23 = X[3][f];
    const cplx f0 = X[0][f], psi = X[4][f];
    // wedge
    nuwedge[5][f] = n1 * f0;
    nuwedge[6][f] = n2 * f0;
    nuwedge[1][f] = n1 * u2 - n2 * u1;
    nuwedge[2][f] = n1 * u3;
    nuwedge[3][f] = n2 * u3;
    nuwedge[4][f] = -n2 * w13 + n1 * w23;
    // contraction
    nucontr[0][f] = n1 * u1 + n2 * u2;
    nucontr[5][f] = -n2 * w12;
    nucontr[6][f] = n1 * w12;
    nucontr[7][f] = n1 * w13 + n2 * w23;
    nucontr[2][f] = -n2 * psi;
    nucontr[3][f] = n1 * psi;
  }
}

}  // namespace

double ibp_residual(const ProductChart& chart, const GradedForm& U, const GradedForm& V) {
  const GradedForm dU = exterior_d(chart, U);
  const GradedForm dV = exterior_d(chart, V);
  const GradedForm cU = codifferential(chart, U);
  const GradedForm cV = codifferential(chart, V);

  const auto Ub = boundary_restrict(chart, U);
  const auto Vb = boundary_restrict(chart, V);
  std::array<std::vector<cplx>, 8> nuU, inuU, nuV, inuV;
  normal_wedge_contract(chart, Ub, nuU, inuU);
  normal_wedge_contract(chart, Vb, nuV, inuV);

  const cplx d1 = inner_product(chart, dU, V) - full_boundary_pairing(chart, nuU, Vb) -
                  inner_product(chart, U, cV);
  const cplx d2 = inner_product(chart, cU, V) + full_boundary_pairing(chart, inuU, Vb) -
                  inner_product(chart, U, dV);

  const GradedForm LU = hodge_laplacian(chart, U);
  const GradedForm LV = hodge_laplacian(chart, V);
  const TraceBundle tU = traces(chart, U);

  // Traces entering the four-term Laplacian identity.
  const BoundaryGradedForm t_cU = tangential_trace(chart, cU);
  const BoundaryGradedForm t_cstarU =
      tangential_trace(chart, codifferential(chart, hodge_star(chart, U)));
  const BoundaryGradedForm t_inu_dV = traces(chart, dV).t_inu;
  const BoundaryGradedForm t_inu_dstarV =
      traces(chart, exterior_d(chart, hodge_star(chart, V))).t_inu;
  const BoundaryGradedForm t_inu_V = traces(chart, V).t_inu;
  const BoundaryGradedForm t_inu_starV = traces(chart, hodge_star(chart, V)).t_inu;

  const cplx lhs = inner_product(chart, U, LV) - inner_product(chart, LU, V);
  const cplx rhs = boundary_inner_product(chart, tU.t, t_inu_dV) +
                   boundary_inner_product(chart, tU.t_star, t_inu_dstarV) +
                   boundary_inner_product(chart, t_cU, t_inu_V) +
                   boundary_inner_product(chart, t_cstarU, t_inu_starV);
  const cplx d3 = lhs - rhs;

  return std::max({std::abs(d1), std::abs(d2), std::abs(d3)});
}

ScalarField coordinate_x1(const ProductChart& chart) {
  const GridDims& d = chart.dims();
  ScalarField out(chart.size());
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) out[d.idx(i, j, k)] = d.x1(i);
  return out;
}

ScalarField coordinate_r(const ProductChart& chart) {
  const GridDims& d = chart.dims();
  ScalarField out(chart.size());
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) out[d.idx(i, j, k)] = d.r(j);
  return out;
}

ScalarField coordinate_theta(const ProductChart& chart) {
  const GridDims& d = chart.dims();
  ScalarField out(chart.size());
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.nr; ++j)
      for (int k = 0; k < d.nth; ++k) out[d.idx(i, j, k)] = d.theta(k);
  return out;
}

ScalarField pairing1(const ScalarField& a1, const ScalarField& a2, const ScalarField& a3,
                     const ScalarField& b1, const ScalarField& b2, const ScalarField& b3) {
  ScalarField out(a1.size());
  for (std::size_t p = 0; p < a1.size(); ++p)
    out[p] = a1[p] * b1[p] + a2[p] * b2[p] + a3[p] * b3[p];
  return out;
}

}  // namespace hmx
