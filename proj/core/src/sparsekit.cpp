#include "hmx/sparsekit.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>

namespace hmx {

CVec pack(const GradedForm& w) {
  const std::size_t n = w.size();
  CVec v(8 * n);
  for (int c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < n; ++p) v[c * n + p] = w.comp[c][p];
  return v;
}

GradedForm unpack(const ProductChart& chart, const CVec& v) {
  const std::size_t n = chart.size();
  GradedForm w(n);
  for (int c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < n; ++p) w.comp[c][p] = v[c * n + p];
  return w;
}

namespace {

// 3-point stencil along an axis at position i of extent m (one-sided at ends,
// except axis 2 which is periodic): fills index/weight pairs, returns count.
int stencil_1d(int axis, int i, int m, double h, int idx[3], double w[3]) {
  const double ih = 1.0 / (2.0 * h);
  if (axis == 2) {
    idx[0] = (i + 1) % m;
    w[0] = ih;
    idx[1] = (i - 1 + m) % m;
    w[1] = -ih;
    return 2;
  }
  if (i == 0) {
    idx[0] = 0;
    w[0] = -3.0 * ih;
    idx[1] = 1;
    w[1] = 4.0 * ih;
    idx[2] = 2;
    w[2] = -ih;
    return 3;
  }
  if (i == m - 1) {
    idx[0] = m - 1;
    w[0] = 3.0 * ih;
    idx[1] = m - 2;
    w[1] = -4.0 * ih;
    idx[2] = m - 3;
    w[2] = ih;
    return 3;
  }
  idx[0] = i + 1;
  w[0] = ih;
  idx[1] = i - 1;
  w[1] = -ih;
  return 2;
}

struct Assembler {
  const ProductChart& chart;
  Triplets& T;
  std::size_t n;

  // out[p] += sign * post[p] * D_axis(pre[.] * in[.])(p)
  void diff_term(int out_slot, int in_slot, int axis, double sign,
                 const std::vector<double>* post, const std::vector<double>* pre) {
    const GridDims& d = chart.dims();
    const int ext[3] = {d.n1, d.nr, d.nth};
    const double hs[3] = {d.h1(), d.hr(), d.hth()};
    int sidx[3];
    double sw[3];
    for (int i = 0; i < d.n1; ++i)
      for (int j = 0; j < d.nr; ++j)
        for (int k = 0; k < d.nth; ++k) {
          const std::size_t p = d.idx(i, j, k);
          const int pos = (axis == 0) ? i : (axis == 1 ? j : k);
          const int cnt = stencil_1d(axis, pos, ext[axis], hs[axis], sidx, sw);
          const double po = post ? (*post)[p] : 1.0;
          for (int s = 0; s < cnt; ++s) {
            std::size_t q;
            if (axis == 0)
              q = d.idx(sidx[s], j, k);
            else if (axis == 1)
              q = d.idx(i, sidx[s], k);
            else
              q = d.idx(i, j, sidx[s]);
            const double pr = pre ? (*pre)[q] : 1.0;
            T.emplace_back(static_cast<int>(dof(out_slot, p, n)),
                           static_cast<int>(dof(in_slot, q, n)), cplx(sign * po * sw[s] * pr, 0.0));
          }
        }
  }
};

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) out[p] = a[p] * b[p];
  return out;
}

std::vector<double> recip(const std::vector<double>& a) {
  std::vector<double> out(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) out[p] = 1.0 / a[p];
  return out;
}

}  // namespace

SpMat exterior_d_matrix(const ProductChart& chart) {
  const std::size_t n = chart.size();
  Triplets T;
  T.reserve(30 * n);
  Assembler as{chart, T, n};
  const auto& a1 = chart.a1();
  const auto& a2 = chart.a2();
  const auto& a3 = chart.a3();
  const auto i1 = recip(a1), i2 = recip(a2), i3 = recip(a3);
  const auto i12 = mul(i1, i2), i13 = mul(i1, i3), i23 = mul(i2, i3);
  const auto a12 = mul(a1, a2), a13 = mul(a1, a3), a23 = mul(a2, a3);
  const auto i123 = mul(i12, i3);

  // 0-form -> 1-form
  as.diff_term(5, 0, 0, +1.0, &i1, nullptr);
  as.diff_term(6, 0, 1, +1.0, &i2, nullptr);
  as.diff_term(7, 0, 2, +1.0, &i3, nullptr);
  // 1-form -> 2-form
  as.diff_term(1, 6, 0, +1.0, &i12, &a2);
  as.diff_term(1, 5, 1, -1.0, &i12, &a1);
  as.diff_term(2, 7, 0, +1.0, &i13, &a3);
  as.diff_term(2, 5, 2, -1.0, &i13, &a1);
  as.diff_term(3, 7, 1, +1.0, &i23, &a3);
  as.diff_term(3, 6, 2, -1.0, &i23, &a2);
  // 2-form -> 3-form
  as.diff_term(4, 3, 0, +1.0, &i123, &a23);
  as.diff_term(4, 2, 1, -1.0, &i123, &a13);
  as.diff_term(4, 1, 2, +1.0, &i123, &a12);

  SpMat A(8 * n, 8 * n);
  A.setFromTriplets(T.begin(), T.end());
  return A;
}

SpMat star_matrix(const ProductChart& chart) {
  const std::size_t n = chart.size();
  Triplets T;
  T.reserve(8 * n);
  auto put = [&](int out_slot, int in_slot, double s) {
    for (std::size_t p = 0; p < n; ++p)
      T.emplace_back(static_cast<int>(dof(out_slot, p, n)), static_cast<int>(dof(in_slot, p, n)),
                     cplx(s, 0.0));
  };
  put(4, 0, +1.0);
  put(0, 4, +1.0);
  put(1, 7, +1.0);
  put(2, 6, -1.0);
  put(3, 5, +1.0);
  put(5, 3, +1.0);
  put(6, 2, -1.0);
  put(7, 1, +1.0);
  SpMat A(8 * n, 8 * n);
  A.setFromTriplets(T.begin(), T.end());
  return A;
}

SpMat codifferential_matrix(const ProductChart& chart) {
  const std::size_t n = chart.size();
  const SpMat S = star_matrix(chart);
  const SpMat D = exterior_d_matrix(chart);
  SpMat SDS = S * SpMat(D * S);
  // per-output-degree signs: deg0 <- k=1: -1, deg1 <- k=2: +1, deg2 <- k=3: -1
  Triplets T;
  T.reserve(8 * n);
  auto sgn = [&](int slot) -> double {
    if (slot == 0) return -1.0;
    if (slot >= 1 && slot <= 3) return -1.0;
    if (slot >= 5) return +1.0;
    return 0.0;  // no 3-form output
  };
  for (int slot = 0; slot < 8; ++slot)
    for (std::size_t p = 0; p < n; ++p) {
      const auto r = static_cast<int>(dof(slot, p, n));
      T.emplace_back(r, r, cplx(sgn(slot), 0.0));
    }
  SpMat Sgn(8 * n, 8 * n);
  Sgn.setFromTriplets(T.begin(), T.end());
  return SpMat(Sgn * SDS);
}

SpMat wedge_matrix(const ProductChart& chart, const CovectorShift& xi) {
  const std::size_t n = chart.size();
  Triplets T;
  T.reserve(13 * n);
  auto put = [&](int o, int i, cplx v) {
    if (v == cplx{}) return;
    for (std::size_t p = 0; p < n; ++p)
      T.emplace_back(static_cast<int>(dof(o, p, n)), static_cast<int>(dof(i, p, n)), v);
  };
  put(5, 0, xi.c1);
  put(6, 0, xi.c2);
  put(7, 0, xi.c3);
  put(1, 6, xi.c1);
  put(1, 5, -xi.c2);
  put(2, 7, xi.c1);
  put(2, 5, -xi.c3);
  put(3, 7, xi.c2);
  put(3, 6, -xi.c3);
  put(4, 1, xi.c3);
  put(4, 2, -xi.c2);
  put(4, 3, xi.c1);
  SpMat A(8 * n, 8 * n);
  A.setFromTriplets(T.begin(), T.end());
  return A;
}

SpMat contract_matrix(const ProductChart& chart, const CovectorShift& xi) {
  const std::size_t n = chart.size();
  Triplets T;
  T.reserve(13 * n);
  auto put = [&](int o, int i, cplx v) {
    if (v == cplx{}) return;
    for (std::size_t p = 0; p < n; ++p)
      T.emplace_back(static_cast<int>(dof(o, p, n)), static_cast<int>(dof(i, p, n)), v);
  };
  put(0, 5, xi.c1);
  put(0, 6, xi.c2);
  put(0, 7, xi.c3);
  put(5, 1, -xi.c2);
  put(5, 2, -xi.c3);
  put(6, 1, xi.c1);
  put(6, 3, -xi.c3);
  put(7, 2, xi.c1);
  put(7, 3, xi.c2);
  put(1, 4, xi.c3);
  put(2, 4, -xi.c2);
  put(3, 4, xi.c1);
  SpMat A(8 * n, 8 * n);
  A.setFromTriplets(T.begin(), T.end());
  return A;
}

SpMat dirac_matrix(const ProductChart& chart, const CovectorShift& xi) {
  const cplx minus_i(0.0, -1.0);
  SpMat D = exterior_d_matrix(chart);
  SpMat C = codifferential_matrix(chart);
  SpMat P = SpMat(D - C);
  if (!xi.zero()) {
    P = SpMat(P + wedge_matrix(chart, xi) + contract_matrix(chart, xi));
  }
  return SpMat(minus_i * P);
}

SpMat pointwise_matrix(const ProductChart& chart, const std::vector<cplx>& entries) {
  const std::size_t n = chart.size();
  Triplets T;
  T.reserve(entries.size());
  for (std::size_t p = 0; p < n; ++p)
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        const cplx v = entries[64 * p + 8 * r + c];
        if (v != cplx{})
          T.emplace_back(static_cast<int>(dof(r, p, n)), static_cast<int>(dof(c, p, n)), v);
      }
  SpMat A(8 * n, 8 * n);
  A.setFromTriplets(T.begin(), T.end());
  return A;
}

void clear_rows(SpMat& A, const std::vector<std::size_t>& rows) {
  std::vector<std::uint8_t> kill(A.rows(), 0);
  for (auto r : rows) kill[r] = 1;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      if (kill[it.row()]) it.valueRef() = cplx{};
  A.prune([](int, int, const cplx& v) { return v != cplx{}; });
}

LinearSolver::LinearSolver(SpMat A) : LinearSolver(std::move(A), Options()) {}

LinearSolver::LinearSolver(SpMat A, Options opt) : A_(std::move(A)), opt_(opt) {
  A_.makeCompressed();
  lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
  lu_->compute(A_);
  lu_ok_ = (lu_->info() == Eigen::Success);
  if (!lu_ok_ && !opt_.iterative_fallback)
    throw NonConvergence("sparse LU factorization failed and no fallback allowed");
}

CVec LinearSolver::solve(const CVec& rhs, SolverReport* report) const {
  CVec x;
  SolverReport rep;
  if (lu_ok_) {
    x = lu_->solve(rhs);
    rep.direct = true;
  } else {
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<cplx>> it;
    it.setTolerance(opt_.tol * 1e-2);
    it.setMaxIterations(opt_.max_iterations);
    it.compute(A_);
    x = it.solve(rhs);
    rep.direct = false;
    rep.iterations = static_cast<int>(it.iterations());
    if (it.info() != Eigen::Success)
      throw NonConvergence("iterative fallback did not converge");
  }
  const double bn = rhs.norm();
  rep.residual = (A_ * x - rhs).norm() / (bn > 0 ? bn : 1.0);
  if (bn > 0 && rep.residual > opt_.tol)
    throw NonConvergence("linear solve residual above tolerance");
  if (report) *report = rep;
  return x;
}

double LinearSolver::invcond_proxy(int probes) const {
  if (!lu_ok_) return 0.0;
  // deterministic probe vectors; sigma_min(A) <= ||x|| / ||A^{-1} x||
  const auto m = A_.rows();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < probes; ++k) {
    CVec x(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double t = static_cast<double>((i + 1) * (k + 3));
      x[i] = cplx(std::cos(0.7 * t + k), std::sin(1.3 * t));
    }
    x /= x.norm();
    const CVec y = lu_->solve(x);
    const double yn = y.norm();
    if (yn > 0) best = std::min(best, 1.0 / yn);
  }
  return best;
}

}  // namespace hmx
