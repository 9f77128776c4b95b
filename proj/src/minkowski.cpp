#include "lorhol/minkowski.hpp"

#include <deque>
#include <stdexcept>

namespace lorhol {

MatrixXd gram_matrix(int n) {
  if (n < 1) {
    throw std::invalid_argument("gram_matrix: screen dimension must be >= 1");
  }
  MatrixXd G = MatrixXd::Zero(n + 2, n + 2);
  G(0, n + 1) = 1.0;
  G(n + 1, 0) = 1.0;
  G.block(1, 1, n, n) = MatrixXd::Identity(n, n);
  return G;
}

bool is_lorentz(const MatrixXd& M, double tol) {
  if (M.rows() != M.cols() || M.rows() < 3) return false;
  const int n = static_cast<int>(M.rows()) - 2;
  MatrixXd G = gram_matrix(n);
  return max_abs_diff(M.transpose() * G * M, G) < tol;
}

MatrixXd ParabolicElement::matrix() const {
  const int d = n();
  MatrixXd M = MatrixXd::Zero(d + 2, d + 2);
  M(0, 0) = a;
  M.block(0, 1, 1, d) = x.transpose();
  M(0, d + 1) = -x.squaredNorm() / (2.0 * a);
  M.block(1, 1, d, d) = A;
  M.block(1, d + 1, d, 1) = -(A * x) / a;
  M(d + 1, d + 1) = 1.0 / a;
  return M;
}

ParabolicElement ParabolicElement::identity(int n) {
  return {1.0, MatrixXd::Identity(n, n), VectorXd::Zero(n)};
}

ParabolicElement make_parabolic(double a, const MatrixXd& A, const VectorXd& x) {
  if (a == 0.0) {
    throw std::invalid_argument("make_parabolic: scaling part must be nonzero");
  }
  if (A.rows() != A.cols() || A.rows() != x.size()) {
    throw std::invalid_argument("make_parabolic: dimension mismatch");
  }
  const int n = static_cast<int>(A.rows());
  if (max_abs_diff(A.transpose() * A, MatrixXd::Identity(n, n)) > 1e-9) {
    throw std::invalid_argument("make_parabolic: A is not orthogonal");
  }
  return {a, A, x};
}

ParabolicElement decompose_parabolic(const MatrixXd& M, double tol) {
  if (!is_lorentz(M, tol)) {
    throw std::invalid_argument("decompose_parabolic: matrix is not Lorentz within tolerance");
  }
  const int n = static_cast<int>(M.rows()) - 2;
  // Stabilizing R·l means the first column is a multiple of e_1.
  if (M.block(1, 0, n + 1, 1).cwiseAbs().maxCoeff() > tol * 10.0) {
    throw std::domain_error("not parabolic: the null line R·l is not stabilized");
  }
  double a = M(0, 0);
  if (a == 0.0) {
    throw std::domain_error("not parabolic: vanishing scaling part");
  }
  MatrixXd A = M.block(1, 1, n, n);
  VectorXd x = M.block(0, 1, 1, n).transpose();
  return make_parabolic(a, A, x);
}

ParabolicElement parabolic_product(const ParabolicElement& p, const ParabolicElement& q) {
  // Matches p.matrix() * q.matrix(); the translation part composes as
  // a_p * x_q + A_q^T x_p.
  return {p.a * q.a, p.A * q.A, p.a * q.x + q.A.transpose() * p.x};
}

ParabolicElement parabolic_inverse(const ParabolicElement& p) {
  return {1.0 / p.a, p.A.transpose(), -(p.A * p.x) / p.a};
}

namespace {

bool contains_element(const std::vector<MatrixXd>& elements, const MatrixXd& M, double tol) {
  for (const auto& E : elements) {
    if (max_abs_diff(E, M) < tol) return true;
  }
  return false;
}

}  // namespace

GroupSample group_closure(const std::vector<MatrixXd>& generators, int max_word_len,
                          double tol) {
  GroupSample sample;
  sample.generators = generators;
  sample.max_word_len = max_word_len;
  sample.dedup_tol = tol;

  std::vector<MatrixXd> steps;  // generators and their inverses
  int dim = 0;
  for (const auto& g : generators) {
    if (!is_lorentz(g, kLorentzTol)) {
      throw std::invalid_argument("group_closure: non-Lorentz generator");
    }
    dim = static_cast<int>(g.rows());
    steps.push_back(g);
    MatrixXd inv = g.inverse();
    if (!contains_element(steps, inv, tol)) steps.push_back(inv);
  }
  if (dim == 0) {
    throw std::invalid_argument("group_closure: empty generator list");
  }

  sample.elements.push_back(MatrixXd::Identity(dim, dim));
  std::vector<MatrixXd> frontier = {sample.elements.front()};
  sample.growth_profile.push_back(1);
  bool last_level_empty = false;

  for (int len = 1; len <= max_word_len; ++len) {
    std::vector<MatrixXd> next;
    for (const auto& w : frontier) {
      for (const auto& s : steps) {
        MatrixXd candidate = w * s;
        if (!contains_element(sample.elements, candidate, tol) &&
            !contains_element(next, candidate, tol)) {
          // Near-duplicate detection: an element closing in on a stored one
          // without matching it signals a continuous direction being sampled.
          for (const auto& E : sample.elements) {
            if (max_abs_diff(E, candidate) < 100.0 * tol) {
              sample.likely_continuous = true;
              break;
            }
          }
          next.push_back(candidate);
        }
      }
    }
    for (const auto& M : next) sample.elements.push_back(M);
    sample.growth_profile.push_back(static_cast<int>(sample.elements.size()));
    last_level_empty = next.empty();
    frontier = std::move(next);
    if (last_level_empty) break;
  }
  sample.saturated = last_level_empty;
  return sample;
}

DiscretePart discrete_part(const GroupSample& sample, double tol) {
  DiscretePart result;
  result.lower_bound_only = !sample.saturated;
  for (const auto& M : sample.elements) {
    ParabolicElement p = decompose_parabolic(M);
    bool found = false;
    for (auto& cls : result.classes) {
      if (std::abs(cls.a - p.a) < tol && max_abs_diff(cls.A, p.A) < tol) {
        ++cls.multiplicity;
        found = true;
        break;
      }
    }
    if (!found) {
      result.classes.push_back({p.a, p.A, 1});
    }
  }
  return result;
}

}  // namespace lorhol
