#include "lorhol/algebra.hpp"

#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace lorhol {

namespace {

int skew_dim(int n) { return n * (n - 1) / 2; }

// Strict upper triangle of a skew matrix, row-major.
VectorXd vech_skew(const MatrixXd& X) {
  const int n = static_cast<int>(X.rows());
  VectorXd c(skew_dim(n));
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) c(idx++) = X(i, j);
  }
  return c;
}

MatrixXd unvech_skew(const VectorXd& c, int n) {
  MatrixXd X = MatrixXd::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      X(i, j) = c(idx);
      X(j, i) = -c(idx);
      ++idx;
    }
  }
  return X;
}

// Frobenius-orthonormalized projection coefficients of X onto an orthonormal
// family of skew matrices.
VectorXd project_coeffs(const MatrixXd& X, const std::vector<MatrixXd>& basis) {
  VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = (X.cwiseProduct(basis[i])).sum();
  }
  return c;
}

std::vector<MatrixXd> orthonormal_skew_family(const std::vector<MatrixXd>& raw, int n,
                                              double tol) {
  std::vector<VectorXd> flat;
  flat.reserve(raw.size());
  for (const auto& X : raw) flat.push_back(vech_skew(X));
  MatrixXd span = orthonormal_span(flat, tol);
  std::vector<MatrixXd> out;
  for (int j = 0; j < span.cols(); ++j) {
    // vech coordinates are sqrt(2)-scaled relative to the Frobenius norm;
    // normalize the matrices themselves.
    MatrixXd X = unvech_skew(span.col(j), n);
    out.push_back(X / X.norm());
  }
  return out;
}

}  // namespace

MatrixXd ParabolicAlgebraElement::matrix() const {
  const int d = n();
  MatrixXd m = MatrixXd::Zero(d + 2, d + 2);
  m(0, 0) = aLie;
  m.block(0, 1, 1, d) = v.transpose();
  m.block(1, 1, d, d) = X;
  m.block(1, d + 1, d, 1) = -v;
  m(d + 1, d + 1) = -aLie;
  return m;
}

ParabolicAlgebraElement ParabolicAlgebraElement::zero(int n) {
  return {0.0, MatrixXd::Zero(n, n), VectorXd::Zero(n)};
}

ParabolicAlgebraElement make_algebra_element(double aLie, const MatrixXd& X, const VectorXd& v) {
  if (X.rows() != X.cols() || X.rows() != v.size()) {
    throw std::invalid_argument("make_algebra_element: dimension mismatch");
  }
  if ((X + X.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("make_algebra_element: X is not skew");
  }
  return {aLie, X, v};
}

ParabolicAlgebraElement decompose_algebra(const MatrixXd& m, double tol) {
  const int n = static_cast<int>(m.rows()) - 2;
  if (n < 1 || m.rows() != m.cols()) {
    throw std::domain_error("decompose_algebra: bad dimensions");
  }
  MatrixXd G = gram_matrix(n);
  if ((m.transpose() * G + G * m).cwiseAbs().maxCoeff() > tol * 10.0) {
    throw std::domain_error("decompose_algebra: not in the Lorentz algebra");
  }
  if (m.block(1, 0, n + 1, 1).cwiseAbs().maxCoeff() > tol * 10.0) {
    throw std::domain_error("decompose_algebra: not in the parabolic algebra");
  }
  return make_algebra_element(m(0, 0), m.block(1, 1, n, n), m.block(0, 1, 1, n).transpose());
}

ParabolicAlgebraElement bracket(const ParabolicAlgebraElement& x,
                                const ParabolicAlgebraElement& y) {
  MatrixXd c = x.matrix() * y.matrix() - y.matrix() * x.matrix();
  return decompose_algebra(c, 1e-6);
}

VectorXd algebra_coordinates(const ParabolicAlgebraElement& e) {
  const int n = e.n();
  VectorXd c(1 + skew_dim(n) + n);
  c(0) = e.aLie;
  c.segment(1, skew_dim(n)) = vech_skew(e.X);
  c.tail(n) = e.v;
  return c;
}

ParabolicAlgebraElement algebra_from_coordinates(const VectorXd& c, int n) {
  ParabolicAlgebraElement e;
  e.aLie = c(0);
  e.X = unvech_skew(c.segment(1, skew_dim(n)), n);
  e.v = c.tail(n);
  return e;
}

TypeReport classify_type(const std::vector<ParabolicAlgebraElement>& basis, double tol) {
  if (basis.empty()) {
    throw std::domain_error("classify_type: empty basis");
  }
  const int n = basis.front().n();
  const int m = skew_dim(n);

  std::vector<VectorXd> coords;
  for (const auto& e : basis) {
    if (e.n() != n) throw std::domain_error("classify_type: mixed dimensions");
    coords.push_back(algebra_coordinates(e));
  }
  MatrixXd S = orthonormal_span(coords, tol);  // (1+m+n) x r

  // Bracket closure.
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      VectorXd bc = algebra_coordinates(bracket(basis[i], basis[j]));
      if (span_residual(bc, S) > 1e-6 * std::max(1.0, bc.norm())) {
        throw std::domain_error("not a subalgebra: bracket leaves the span");
      }
    }
  }

  TypeReport report;
  report.n = n;
  report.span_basis = S;

  // Translation projection must be all of R^n.
  MatrixXd pr_trans = column_space(S.bottomRows(n), tol);
  if (pr_trans.cols() != n) {
    throw std::domain_error("indecomposability precondition violated: translation projection deficient");
  }

  // Translations contained in h.
  MatrixXd topKer = nullspace(S.topRows(1 + m), tol);
  MatrixXd trans_in = column_space(S.bottomRows(n) * topKer, tol);
  const int t = static_cast<int>(trans_in.cols());
  const bool contains_Rn = (t == n);

  const bool a_part_present = S.row(0).norm() > tol;
  VectorXd e_a = VectorXd::Zero(1 + m + n);
  e_a(0) = 1.0;
  const bool contains_R = in_span(e_a, S, tol);

  // so(n)-projection g, its derived algebra and center.
  std::vector<MatrixXd> g_raw;
  for (int j = 0; j < S.cols(); ++j) {
    MatrixXd X = unvech_skew(S.col(j).segment(1, m), n);
    if (X.norm() > tol) g_raw.push_back(X);
  }
  report.g_basis = orthonormal_skew_family(g_raw, n, tol);

  std::vector<MatrixXd> bracket_raw;
  for (size_t i = 0; i < report.g_basis.size(); ++i) {
    for (size_t j = i + 1; j < report.g_basis.size(); ++j) {
      MatrixXd B = report.g_basis[i] * report.g_basis[j] - report.g_basis[j] * report.g_basis[i];
      if (B.norm() > tol) bracket_raw.push_back(B);
    }
  }
  report.derived_basis = orthonormal_skew_family(bracket_raw, n, tol);

  // Center: elements of g commuting with every g-basis element.
  const int dg = static_cast<int>(report.g_basis.size());
  if (dg > 0) {
    MatrixXd ad(m * dg, dg);
    for (int i = 0; i < dg; ++i) {
      for (int c = 0; c < dg; ++c) {
        MatrixXd B = report.g_basis[c] * report.g_basis[i] - report.g_basis[i] * report.g_basis[c];
        ad.block(m * i, c, m, 1) = vech_skew(B);
      }
    }
    MatrixXd ker = nullspace(ad, tol);
    std::vector<MatrixXd> center_raw;
    for (int j = 0; j < ker.cols(); ++j) {
      MatrixXd Z = MatrixXd::Zero(n, n);
      for (int c = 0; c < dg; ++c) Z += ker(c, j) * report.g_basis[c];
      center_raw.push_back(Z);
    }
    report.center_basis = orthonormal_skew_family(center_raw, n, tol);
  }

  if (contains_Rn && contains_R) {
    report.type = 1;
    return report;
  }
  if (contains_Rn && !a_part_present) {
    report.type = 2;
    return report;
  }
  if (contains_Rn && a_part_present && !contains_R) {
    // Scaling coupled to the center: a = phi(Z) on every element.
    const int dz = static_cast<int>(report.center_basis.size());
    if (dz == 0) {
      throw std::domain_error("indecomposability precondition violated: coupled scaling with trivial center");
    }
    MatrixXd C(S.cols(), dz);
    VectorXd rhs(S.cols());
    for (int j = 0; j < S.cols(); ++j) {
      MatrixXd X = unvech_skew(S.col(j).segment(1, m), n);
      C.row(j) = project_coeffs(X, report.center_basis).transpose();
      rhs(j) = S(0, j);
    }
    Eigen::JacobiSVD<MatrixXd> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
    VectorXd phi = svd.solve(rhs);
    if ((C * phi - rhs).norm() > 1e-6 * std::max(1.0, rhs.norm())) {
      throw std::domain_error("indecomposability precondition violated: scaling not a function of the center");
    }
    if (phi.norm() < 1e-7) {
      throw std::domain_error("indecomposability precondition violated: scaling functional not surjective");
    }
    report.type = 3;
    report.phi_coeffs = phi;
    return report;
  }

  // Remaining shape: translations only partially contained, coupled to the
  // center through the complement.
  if (a_part_present) {
    throw std::domain_error("indecomposability precondition violated: scaling present with partial translations");
  }
  const int k = n - t;
  if (k <= 0 || k >= n) {
    throw std::domain_error("indecomposability precondition violated: no splitting found");
  }
  report.k = k;
  report.trans_basis = trans_in;
  report.k_basis = nullspace(trans_in.transpose(), tol);
  const int dz = static_cast<int>(report.center_basis.size());
  if (dz == 0) {
    throw std::domain_error("indecomposability precondition violated: coupled translations with trivial center");
  }
  MatrixXd C(S.cols(), dz);
  MatrixXd U(S.cols(), k);
  for (int j = 0; j < S.cols(); ++j) {
    MatrixXd X = unvech_skew(S.col(j).segment(1, m), n);
    C.row(j) = project_coeffs(X, report.center_basis).transpose();
    U.row(j) = (report.k_basis.transpose() * S.col(j).tail(n)).transpose();
  }
  Eigen::JacobiSVD<MatrixXd> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  MatrixXd psiT = svd.solve(U);  // dz x k
  if ((C * psiT - U).norm() > 1e-6 * std::max(1.0, U.norm())) {
    throw std::domain_error("indecomposability precondition violated: translations not a function of the center");
  }
  MatrixXd psi = psiT.transpose();  // k x dz
  Eigen::JacobiSVD<MatrixXd> psvd(psi);
  if (psvd.singularValues().size() < k || psvd.singularValues()(k - 1) < 1e-7) {
    throw std::domain_error("indecomposability precondition violated: translation coupling not surjective");
  }
  report.type = 4;
  report.psi = psi;
  return report;
}

ParabolicElement decouple(const ParabolicElement& P, const TypeReport& report, double tol) {
  const int n = report.n;
  auto translation = [&](const VectorXd& y) {
    return ParabolicElement{1.0, MatrixXd::Identity(n, n), y};
  };

  switch (report.type) {
    case 1:
    case 2: {
      return translation(-P.x / P.a);
    }
    case 3: {
      // Kill the scale up to sign with a center exponential, then translate.
      const double alpha = std::log(std::abs(P.a));
      const VectorXd& phi = report.phi_coeffs;
      VectorXd c = phi * (-alpha / phi.squaredNorm());
      MatrixXd Z = MatrixXd::Zero(n, n);
      for (int i = 0; i < c.size(); ++i) Z += c(i) * report.center_basis[i];
      const double phiZ = phi.dot(c);
      ParabolicElement Q1{std::exp(phiZ), Z.exp(), VectorXd::Zero(n)};
      ParabolicElement P1 = parabolic_product(P, Q1);
      ParabolicElement Q2 = translation(-P1.x / P1.a);
      return parabolic_product(Q1, Q2);
    }
    case 4: {
      // First kill the translation component lying inside h, then use a
      // center exponential to cancel the coupled component.
      VectorXd t_comp = report.trans_basis * (report.trans_basis.transpose() * P.x);
      ParabolicElement Q1 = translation(-t_comp / P.a);
      ParabolicElement P1 = parabolic_product(P, Q1);
      VectorXd uk = report.k_basis.transpose() * P1.x;
      Eigen::JacobiSVD<MatrixXd> svd(report.psi, Eigen::ComputeThinU | Eigen::ComputeThinV);
      VectorXd c = svd.solve(-uk / P1.a);
      if ((report.psi * c + uk / P1.a).norm() > tol * 1e3 * std::max(1.0, uk.norm())) {
        throw std::runtime_error("epimorphism deficiency: coupled translation not cancellable");
      }
      MatrixXd W = MatrixXd::Zero(n, n);
      for (int i = 0; i < c.size(); ++i) W += c(i) * report.center_basis[i];
      ParabolicAlgebraElement elem{0.0, W, report.k_basis * (report.psi * c)};
      ParabolicElement Q2 = decompose_parabolic(elem.matrix().exp(), 1e-7);
      return parabolic_product(Q1, Q2);
    }
    default:
      throw std::invalid_argument("decouple: report carries no valid type tag");
  }
}

namespace {

// Real eigenspaces of M, one orthonormal basis per distinct real eigenvalue.
std::vector<MatrixXd> real_eigenspaces(const MatrixXd& M, double tol) {
  Eigen::EigenSolver<MatrixXd> es(M);
  std::vector<double> seen;
  std::vector<MatrixXd> spaces;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-8) continue;
    double lambda = ev.real();
    bool dup = false;
    for (double s : seen) {
      if (std::abs(s - lambda) < 1e-8) dup = true;
    }
    if (dup) continue;
    seen.push_back(lambda);
    MatrixXd shifted = M - lambda * MatrixXd::Identity(M.rows(), M.cols());
    MatrixXd ker = nullspace(shifted, 1e-7);
    if (ker.cols() > 0) spaces.push_back(ker);
  }
  (void)tol;
  return spaces;
}

bool same_line(const VectorXd& a, const VectorXd& b, double tol) {
  VectorXd an = a.normalized(), bn = b.normalized();
  return (an - bn).norm() < tol || (an + bn).norm() < tol;
}

}  // namespace

NullLineResult invariant_null_lines(const std::vector<MatrixXd>& generators, double tol) {
  NullLineResult result;
  if (generators.empty()) {
    result.all = true;
    return result;
  }
  const int dim = static_cast<int>(generators.front().rows());
  const int n = dim - 2;
  MatrixXd G = gram_matrix(n);

  std::vector<MatrixXd> nontrivial;
  for (const auto& g : generators) {
    if (max_abs_diff(g, MatrixXd::Identity(dim, dim)) > tol) nontrivial.push_back(g);
  }
  if (nontrivial.empty()) {
    result.all = true;
    return result;
  }

  std::vector<MatrixXd> candidates = real_eigenspaces(nontrivial.front(), tol);
  for (size_t gi = 1; gi < nontrivial.size(); ++gi) {
    std::vector<MatrixXd> spaces = real_eigenspaces(nontrivial[gi], tol);
    std::vector<MatrixXd> refined;
    for (const auto& cand : candidates) {
      for (const auto& sp : spaces) {
        MatrixXd inter = subspace_intersection(cand, sp, 1e-7);
        if (inter.cols() > 0) refined.push_back(inter);
      }
    }
    candidates = std::move(refined);
  }

  for (const auto& cand : candidates) {
    if (cand.cols() == 1) {
      VectorXd w = cand.col(0).normalized();
      if (std::abs(w.dot(G * w)) < 1e-7) {
        bool dup = false;
        for (const auto& line : result.lines) {
          if (same_line(line, w, 1e-6)) dup = true;
        }
        if (!dup) result.lines.push_back(w);
      }
      continue;
    }
    // Restricted Gram form decides which lines inside a shared eigenspace are
    // null: indefinite -> a continuum, semidefinite -> its kernel, definite ->
    // none.
    MatrixXd Q = cand.transpose() * G * cand;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q);
    const auto& ev = es.eigenvalues();
    bool has_pos = ev.maxCoeff() > 1e-7;
    bool has_neg = ev.minCoeff() < -1e-7;
    if (has_pos && has_neg) {
      result.continuum = true;
      continue;
    }
    for (int i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) < 1e-7) {
        VectorXd w = (cand * es.eigenvectors().col(i)).normalized();
        bool dup = false;
        for (const auto& line : result.lines) {
          if (same_line(line, w, 1e-6)) dup = true;
        }
        if (!dup) result.lines.push_back(w);
      }
    }
  }
  return result;
}

NormalizerResult normalizer_check(const std::vector<MatrixXd>& h0_generators, const MatrixXd& g,
                                  double tol) {
  NullLineResult nl = invariant_null_lines(h0_generators);
  if (nl.all || nl.continuum || nl.lines.size() != 1) {
    throw std::domain_error("normalizer_check: generators do not single out a unique null line");
  }
  const VectorXd& line = nl.lines.front();

  NormalizerResult result;
  // Conjugation must stay inside the linear span of sampled words of H^0.
  GroupSample sample = group_closure(h0_generators, 3);
  std::vector<VectorXd> flat;
  for (const auto& E : sample.elements) flat.push_back(vec(E));
  MatrixXd span = orthonormal_span(flat, 1e-10);
  MatrixXd ginv = g.inverse();
  for (const auto& h : h0_generators) {
    MatrixXd conj = g * h * ginv;
    if (!in_span(vec(conj), span, tol)) {
      result.ok = false;
      result.reason = "conjugate of a generator leaves the sampled span";
      result.witness = vec(conj);
      return result;
    }
  }
  // The lemma's conclusion: g^{-1} maps l back into the invariant line.
  VectorXd image = (ginv * line).normalized();
  if (!same_line(image, line, tol)) {
    result.ok = false;
    result.reason = "g^{-1} moves the invariant null line";
    result.witness = image;
    return result;
  }
  result.ok = true;
  return result;
}

}  // namespace lorhol
