#pragma once

// Small wrapper around one factorized real sparse system per Fourier mode.

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <memory>
#include <string>
#include <vector>

#include "cylflow/error.hpp"

namespace cylflow::detail {

class SparseSystem {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  using Triplet = Eigen::Triplet<double, int>;

  SparseSystem() = default;

  void factorize(int n, const std::vector<Triplet>& triplets, const std::string& what) {
    A_.resize(n, n);
    A_.setFromTriplets(triplets.begin(), triplets.end());
    A_.makeCompressed();
    lu_ = std::make_unique<Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<int>>>();
    lu_->analyzePattern(A_);
    lu_->factorize(A_);
    if (lu_->info() != Eigen::Success)
      throw SolverFailure(what + ": sparse factorization failed (" + lu_->lastErrorMessage() + ")");
  }

  /// Solves for every column of b.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b, const std::string& what) const {
    Eigen::MatrixXd x = lu_->solve(b);
    if (lu_->info() != Eigen::Success) throw SolverFailure(what + ": sparse solve failed");
    if (!x.allFinite()) throw SolverFailure(what + ": non-finite solution");
    return x;
  }

  const Matrix& matrix() const { return A_; }
  bool ready() const { return static_cast<bool>(lu_); }

 private:
  Matrix A_;
  std::unique_ptr<Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<int>>> lu_;
};

}  // namespace cylflow::detail
