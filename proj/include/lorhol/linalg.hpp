#pragma once

// Small dense-linear-algebra helpers shared across the library: nullspaces,
// column spaces, subspace intersections and span-membership tests, all via
// SVD on small matrices.

#include <Eigen/Dense>
#include <vector>

namespace lorhol {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest absolute entry of the difference; the dedup/comparison metric used
// throughout.
inline double max_abs_diff(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

// Orthonormal basis of the kernel of M (columns of the result), singular
// values below `tol` counting as zero.
MatrixXd nullspace(const MatrixXd& M, double tol = 1e-9);

// Orthonormal basis of the column space of M.
MatrixXd column_space(const MatrixXd& M, double tol = 1e-9);

// Orthonormal basis of the span of a set of vectors (given as columns).
MatrixXd orthonormal_span(const std::vector<VectorXd>& vectors, double tol = 1e-9);

// Intersection of two subspaces given by orthonormal column bases.
MatrixXd subspace_intersection(const MatrixXd& A, const MatrixXd& B, double tol = 1e-9);

// Distance of v from the span of the columns of basis (orthonormal not
// required); returns the residual norm of the least-squares projection.
double span_residual(const VectorXd& v, const MatrixXd& basis);

// True if v lies in the column span of basis up to tol (relative to |v|).
bool in_span(const VectorXd& v, const MatrixXd& basis, double tol = 1e-9);

// Flatten a matrix column-major into a vector.
inline VectorXd vec(const MatrixXd& M) {
  return Eigen::Map<const VectorXd>(M.data(), M.size());
}

}  // namespace lorhol
