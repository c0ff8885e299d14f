#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>
#include <vector>

#include "hmx/calculus.hpp"
#include "hmx/chart.hpp"
#include "hmx/field.hpp"

namespace hmx {

using SpMat = Eigen::SparseMatrix<cplx>;
using CVec = Eigen::VectorXcd;
using Triplets = std::vector<Eigen::Triplet<cplx>>;

struct NearResonance : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CVec pack(const GradedForm& w);
GradedForm unpack(const ProductChart& chart, const CVec& v);

/// Row/column indexing of packed graded fields: slot * N + grid index.
inline std::size_t dof(int slot, std::size_t p, std::size_t n) { return slot * n + p; }

// --- operator assembly -------------------------------------------------------
SpMat exterior_d_matrix(const ProductChart& chart);
SpMat star_matrix(const ProductChart& chart);
SpMat codifferential_matrix(const ProductChart& chart);
SpMat wedge_matrix(const ProductChart& chart, const CovectorShift& xi);
SpMat contract_matrix(const ProductChart& chart, const CovectorShift& xi);
/// P_xi = (1/i)(d_xi - delta_xi) as a matrix.
SpMat dirac_matrix(const ProductChart& chart, const CovectorShift& xi = CovectorShift{});
/// Block-diagonal matrix of a pointwise 8x8 potential (see potentials.hpp).
SpMat pointwise_matrix(const ProductChart& chart, const std::vector<cplx>& entries);

/// Zero out the rows listed in `rows` (used before inserting boundary rows).
void clear_rows(SpMat& A, const std::vector<std::size_t>& rows);

// --- linear solve --------------------------------------------------------------
struct SolverReport {
  double residual = 0.0;      // ||Ax - b|| / max(||b||, tiny)
  double invcond_proxy = 0.0; // min ||x|| / ||A^{-1} x|| over probes (proxy for sigma_min)
  int iterations = 0;         // 0 for the direct path
  bool direct = true;
};

class LinearSolver {
 public:
  struct Options {
    double tol = 1e-9;
    bool iterative_fallback = true;
    int max_iterations = 4000;
    double resonance_threshold = 0.0;  // throw NearResonance if proxy below (0 = off)
  };

  explicit LinearSolver(SpMat A);
  LinearSolver(SpMat A, Options opt);
  CVec solve(const CVec& rhs, SolverReport* report = nullptr) const;
  /// sigma_min proxy from k solves with deterministic probe vectors.
  double invcond_proxy(int probes = 3) const;
  const SpMat& matrix() const { return A_; }

 private:
  SpMat A_;
  Options opt_;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
  bool lu_ok_ = false;
};

}  // namespace hmx
