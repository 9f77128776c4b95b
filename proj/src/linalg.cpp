#include "lorhol/linalg.hpp"

namespace lorhol {

MatrixXd nullspace(const MatrixXd& M, double tol) {
  if (M.size() == 0) return MatrixXd::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return svd.matrixV().rightCols(M.cols() - rank);
}

MatrixXd column_space(const MatrixXd& M, double tol) {
  if (M.size() == 0 || M.cwiseAbs().maxCoeff() < tol) return MatrixXd(M.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

MatrixXd orthonormal_span(const std::vector<VectorXd>& vectors, double tol) {
  if (vectors.empty()) return MatrixXd(0, 0);
  MatrixXd M(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return column_space(M, tol);
}

MatrixXd subspace_intersection(const MatrixXd& A, const MatrixXd& B, double tol) {
  if (A.cols() == 0 || B.cols() == 0) return MatrixXd(A.rows(), 0);
  // Kernel of [A B] gives coefficient pairs (x, y) with A x = -B y; A x spans
  // the intersection.
  MatrixXd AB(A.rows(), A.cols() + B.cols());
  AB << A, B;
  MatrixXd ker = nullspace(AB, tol);
  if (ker.cols() == 0) return MatrixXd(A.rows(), 0);
  MatrixXd inter = A * ker.topRows(A.cols());
  return column_space(inter, tol);
}

double span_residual(const VectorXd& v, const MatrixXd& basis) {
  if (basis.cols() == 0) return v.norm();
  VectorXd c = basis.colPivHouseholderQr().solve(v);
  return (basis * c - v).norm();
}

bool in_span(const VectorXd& v, const MatrixXd& basis, double tol) {
  double scale = std::max(1.0, v.norm());
  return span_residual(v, basis) < tol * scale;
}

}  // namespace lorhol
