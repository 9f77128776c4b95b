#include "lorhol/spin.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace lorhol {

namespace {

using Complex = std::complex<double>;
const Complex kI(0.0, 1.0);

MatrixXcd pauli(int which) {
  MatrixXcd s(2, 2);
  switch (which) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -kI, kI, 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

// Anticommuting Hermitian generators squaring to +Id on C^{2^floor(n/2)}:
// gamma_{2j-1} = s3^(j-1) x s1 x I..., gamma_{2j} = s3^(j-1) x s2 x I...,
// and for odd n the extra generator s3^m.
std::vector<MatrixXcd> euclidean_gammas(int n) {
  const int m = n / 2;
  const int d = 1 << m;
  std::vector<MatrixXcd> out;
  for (int j = 1; j <= m; ++j) {
    for (int which : {1, 2}) {
      MatrixXcd g = MatrixXcd::Identity(1, 1);
      for (int pos = 1; pos <= m; ++pos) {
        MatrixXcd factor;
        if (pos < j) {
          factor = pauli(3);
        } else if (pos == j) {
          factor = pauli(which);
        } else {
          factor = MatrixXcd::Identity(2, 2);
        }
        g = Eigen::kroneckerProduct(g, factor).eval();
      }
      out.push_back(g);
    }
  }
  if (n % 2 == 1) {
    MatrixXcd g = MatrixXcd::Identity(1, 1);
    for (int pos = 0; pos < m; ++pos) g = Eigen::kroneckerProduct(g, pauli(3)).eval();
    if (m == 0) g = MatrixXcd::Identity(1, 1);
    out.push_back(g);
  }
  (void)d;
  return out;
}

MatrixXcd nullspace_complex(const MatrixXcd& M, double tol = 1e-9) {
  if (M.rows() == 0) return MatrixXcd::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<MatrixXcd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return svd.matrixV().rightCols(M.cols() - rank);
}

// Skew-symmetric logarithm of a special orthogonal matrix via the real Schur
// form; -1 eigenvalues come in pairs (det = 1) and are joined into plane
// rotations by pi.
MatrixXd so_log(const MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::RealSchur<MatrixXd> schur(A);
  const MatrixXd U = schur.matrixU();
  const MatrixXd T = schur.matrixT();
  MatrixXd X = MatrixXd::Zero(n, n);
  std::vector<int> reflections;
  int i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(T(i + 1, i)) > 1e-12) {
      const double theta = std::atan2(T(i + 1, i), T(i, i));
      X(i, i + 1) = -theta;
      X(i + 1, i) = theta;
      i += 2;
    } else {
      if (T(i, i) < 0.0) reflections.push_back(i);
      i += 1;
    }
  }
  if (reflections.size() % 2 != 0) {
    throw std::domain_error("not in SO(n), no spin lift");
  }
  for (std::size_t r = 0; r + 1 < reflections.size(); r += 2) {
    const int a = reflections[r], b = reflections[r + 1];
    X(a, b) = -M_PI;
    X(b, a) = M_PI;
  }
  X = (U * X * U.transpose()).eval();
  if ((X.exp() - A).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::runtime_error("orthogonal logarithm failed to reproduce the rotation");
  }
  return X;
}

// Spinor action of a skew coefficient matrix: sign/4 * sum_ij X_ij G_i G_j
// over the given anticommuting generators (sign = their common square).
MatrixXcd algebra_spinor_action(const MatrixXd& X, const std::vector<MatrixXcd>& gens,
                                double sign) {
  const int d = static_cast<int>(gens.front().rows());
  MatrixXcd M = MatrixXcd::Zero(d, d);
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < X.cols(); ++j) {
      if (X(i, j) != 0.0) M += (sign * 0.25 * X(i, j)) * gens[i] * gens[j];
    }
  }
  return M;
}

struct LiftContext {
  std::vector<MatrixXcd> gens;  // anticommuting generators to rotate
  double sign = 1.0;            // common square of the generators
};

LiftContext lift_context(const SpinRep& rep) {
  LiftContext ctx;
  if (rep.null_frame) {
    for (int j = 0; j < rep.screen_dim(); ++j) ctx.gens.push_back(rep.screen(j));
    ctx.sign = -1.0;
  } else if (rep.p == 0) {
    ctx.gens = rep.gamma;
    ctx.sign = 1.0;
  } else {
    throw std::invalid_argument(
        "spin lift supported for Euclidean and null-frame representations only");
  }
  return ctx;
}

double conjugation_residual(const MatrixXcd& s, const MatrixXd& A,
                            const std::vector<MatrixXcd>& gens) {
  const MatrixXcd sinv = s.inverse();
  double res = 0.0;
  for (int j = 0; j < A.cols(); ++j) {
    MatrixXcd target = MatrixXcd::Zero(gens.front().rows(), gens.front().cols());
    for (int k = 0; k < A.rows(); ++k) target += A(k, j) * gens[k];
    res = std::max(res, (s * gens[j] * sinv - target).cwiseAbs().maxCoeff());
  }
  return res;
}

// p-form with entries stored on sorted index tuples; evaluation resolves the
// permutation sign, repeated indices give zero.
class AlternatingForm {
 public:
  void set(std::vector<int> idx, double coeff) { terms_[std::move(idx)] = coeff; }

  double eval(std::vector<int> idx) const {
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (idx[a] == idx[b]) return 0.0;
        if (idx[a] > idx[b]) {
          std::swap(idx[a], idx[b]);
          sign = -sign;
        }
      }
    }
    auto it = terms_.find(idx);
    return it == terms_.end() ? 0.0 : sign * it->second;
  }

  const std::map<std::vector<int>, double>& terms() const { return terms_; }

 private:
  std::map<std::vector<int>, double> terms_;
};

// Basis of the stabilizer algebra {X in so(n) : L_X form = 0}.
std::vector<MatrixXd> form_stabilizer(int n, int degree, const AlternatingForm& form) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  // Enumerate sorted index tuples of the given degree.
  std::vector<std::vector<int>> tuples;
  std::vector<int> t(degree);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == degree) {
      tuples.push_back(t);
      return;
    }
    for (int v = start; v < n; ++v) {
      t[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);

  MatrixXd system(static_cast<int>(tuples.size()), static_cast<int>(pairs.size()));
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [a, b] = pairs[c];
      // X = E_ab - E_ba; (L_X form)(T) = -sum_r form(T with t_r -> X t_r).
      double val = 0.0;
      for (int slot = 0; slot < degree; ++slot) {
        std::vector<int> idx = tuples[r];
        const int orig = idx[slot];
        // X e_orig = (E_ab - E_ba) e_orig: contributes a when orig = b etc.
        if (orig == b) {
          idx[slot] = a;
          val -= form.eval(idx);
        } else if (orig == a) {
          idx[slot] = b;
          val += form.eval(idx);
        }
      }
      system(static_cast<int>(r), static_cast<int>(c)) = val;
    }
  }
  MatrixXd null = nullspace(system, 1e-9);
  std::vector<MatrixXd> out;
  for (int c = 0; c < null.cols(); ++c) {
    MatrixXd X = MatrixXd::Zero(n, n);
    for (std::size_t pidx = 0; pidx < pairs.size(); ++pidx) {
      const auto [a, b] = pairs[pidx];
      X(a, b) += null(static_cast<int>(pidx), c);
      X(b, a) -= null(static_cast<int>(pidx), c);
    }
    out.push_back(X);
  }
  return out;
}

// Real 2m x 2m matrix of a complex m x m matrix, coordinates ordered
// (Re z_0, Im z_0, Re z_1, ...).
MatrixXd complex_to_real(const MatrixXcd& C) {
  const int m = static_cast<int>(C.rows());
  MatrixXd R = MatrixXd::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      R(2 * j, 2 * k) = C(j, k).real();
      R(2 * j, 2 * k + 1) = -C(j, k).imag();
      R(2 * j + 1, 2 * k) = C(j, k).imag();
      R(2 * j + 1, 2 * k + 1) = C(j, k).real();
    }
  }
  return R;
}

MatrixXcd unit_entry(int m, int j, int k, Complex v) {
  MatrixXcd E = MatrixXcd::Zero(m, m);
  E(j, k) = v;
  return E;
}

MatrixXcd evaluate_word(const std::vector<int>& word, const std::vector<MatrixXcd>& gens) {
  const int d = static_cast<int>(gens.front().rows());
  MatrixXcd P = MatrixXcd::Identity(d, d);
  for (int letter : word) {
    const int idx = std::abs(letter) - 1;
    if (letter == 0 || idx >= static_cast<int>(gens.size())) {
      throw std::invalid_argument("relation word: generator index out of range");
    }
    P *= (letter > 0) ? gens[idx] : gens[idx].inverse().eval();
  }
  return P;
}

MatrixXd evaluate_word_real(const std::vector<int>& word, const std::vector<MatrixXd>& gens) {
  const int n = static_cast<int>(gens.front().rows());
  MatrixXd P = MatrixXd::Identity(n, n);
  for (int letter : word) {
    const int idx = std::abs(letter) - 1;
    if (letter == 0 || idx >= static_cast<int>(gens.size())) {
      throw std::invalid_argument("relation word: generator index out of range");
    }
    if (letter > 0) {
      P *= gens[idx];
    } else {
      P *= gens[idx].transpose();
    }
  }
  return P;
}

}  // namespace

const MatrixXcd& SpinRep::ell() const {
  if (!null_frame) throw std::logic_error("ell: not a null-frame representation");
  return gamma.front();
}

const MatrixXcd& SpinRep::ell_star() const {
  if (!null_frame) throw std::logic_error("ell_star: not a null-frame representation");
  return gamma.back();
}

const MatrixXcd& SpinRep::screen(int j) const {
  if (!null_frame) throw std::logic_error("screen: not a null-frame representation");
  if (j < 0 || j >= screen_dim()) throw std::out_of_range("screen index");
  return gamma[j + 1];
}

SpinRep clifford_generators(int p, int q) {
  if (p + q < 1) throw std::invalid_argument("clifford_generators: p + q must be positive");
  if (p < 0 || q < 0) throw std::invalid_argument("clifford_generators: negative signature");
  SpinRep rep;
  rep.p = p;
  rep.q = q;
  if (p == 1 && q >= 1) {
    // Null-frame realization on Delta_n (x) Delta_{1,1}.
    const int n = q - 1;
    rep.null_frame = true;
    MatrixXcd L(2, 2), Ls(2, 2), omega(2, 2);
    L << 0, 0, std::sqrt(2.0), 0;
    Ls << 0, -std::sqrt(2.0), 0, 0;
    omega << 1, 0, 0, -1;
    std::vector<MatrixXcd> eu = euclidean_gammas(n);
    const int d = n == 0 ? 1 : static_cast<int>(eu.front().rows());
    const MatrixXcd id = MatrixXcd::Identity(d, d);
    rep.gamma.push_back(Eigen::kroneckerProduct(id, L).eval());
    for (int j = 0; j < n; ++j) {
      rep.gamma.push_back(Eigen::kroneckerProduct((kI * eu[j]).eval(), omega).eval());
    }
    rep.gamma.push_back(Eigen::kroneckerProduct(id, Ls).eval());
    MatrixXd gram = MatrixXd::Identity(n + 2, n + 2);
    gram(0, 0) = gram(n + 1, n + 1) = 0.0;
    gram(0, n + 1) = gram(n + 1, 0) = 1.0;
    rep.bilinear = -gram;
    return rep;
  }
  if (p == 0) {
    rep.gamma = euclidean_gammas(q);
    rep.bilinear = MatrixXd::Identity(q, q);
    return rep;
  }
  // General signature: imaginary scaling of the first p generators.
  rep.gamma = euclidean_gammas(p + q);
  for (int i = 0; i < p; ++i) rep.gamma[i] = (kI * rep.gamma[i]).eval();
  VectorXd eps = VectorXd::Ones(p + q);
  eps.head(p).array() = -1.0;
  rep.bilinear = eps.asDiagonal();
  return rep;
}

double clifford_relation_residual(const SpinRep& rep) {
  const int d = rep.dim();
  const int g = static_cast<int>(rep.gamma.size());
  double res = 0.0;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      MatrixXcd anti = rep.gamma[a] * rep.gamma[b] + rep.gamma[b] * rep.gamma[a] -
                       2.0 * rep.bilinear(a, b) * MatrixXcd::Identity(d, d);
      res = std::max(res, anti.cwiseAbs().maxCoeff());
    }
  }
  return res;
}

SpinLift spin_lift_element(const MatrixXd& A, const SpinRep& rep) {
  LiftContext ctx = lift_context(rep);
  const int n = static_cast<int>(ctx.gens.size());
  if (A.rows() != n || A.cols() != n) {
    throw std::invalid_argument("spin lift: rotation size does not match the representation");
  }
  if ((A.transpose() * A - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("spin lift: matrix is not orthogonal");
  }
  if (A.determinant() < 0.0) throw std::domain_error("not in SO(n), no spin lift");
  const MatrixXd X = so_log(A);
  SpinLift lift;
  lift.plus = algebra_spinor_action(X, ctx.gens, ctx.sign).exp();
  lift.minus = -lift.plus;
  lift.residual = conjugation_residual(lift.plus, A, ctx.gens);
  if (lift.residual > 1e-9) {
    throw std::runtime_error("spin lift: conjugation action does not reproduce the rotation");
  }
  return lift;
}

LiftedGroup lift_group(const std::vector<MatrixXd>& generators,
                       const std::vector<std::vector<int>>& relations,
                       const std::vector<MatrixXd>& algebra) {
  LiftedGroup out;
  if (generators.empty() && algebra.empty()) {
    throw std::invalid_argument("lift_group: no generators supplied");
  }
  out.n = static_cast<int>(generators.empty() ? algebra.front().rows() : generators.front().rows());
  out.rep = clifford_generators(0, out.n);
  out.generators = generators;
  out.relations = relations;
  out.algebra = algebra;
  for (const MatrixXd& X : algebra) {
    if (X.rows() != out.n || X.cols() != out.n ||
        (X + X.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("lift_group: algebra generator is not skew of matching size");
    }
    out.algebra_action.push_back(algebra_spinor_action(X, out.rep.gamma, 1.0));
  }

  const int r = static_cast<int>(generators.size());
  if (r > 8) {
    throw std::invalid_argument("lift_group: sign search not attempted for more than 8 generators");
  }
  std::vector<SpinLift> lifts;
  for (const MatrixXd& A : generators) lifts.push_back(spin_lift_element(A, out.rep));

  // The relations must already hold for the orthogonal generators.
  for (std::size_t w = 0; w < relations.size(); ++w) {
    if (!generators.empty()) {
      MatrixXd P = evaluate_word_real(relations[w], generators);
      if ((P - MatrixXd::Identity(out.n, out.n)).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("lift_group: relation " + std::to_string(w) +
                                    " does not hold in SO(n)");
      }
    }
  }

  const int d = out.rep.dim();
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  int obstructing = -1;
  bool found = generators.empty() || relations.empty();
  if (found) {
    for (const SpinLift& l : lifts) out.lifted.push_back(l.plus);
  }
  for (int mask = 0; mask < (1 << r) && !found; ++mask) {
    std::vector<MatrixXcd> chosen;
    for (int i = 0; i < r; ++i) chosen.push_back((mask >> i) & 1 ? lifts[i].minus : lifts[i].plus);
    bool ok = true;
    for (std::size_t w = 0; w < relations.size(); ++w) {
      MatrixXcd P = evaluate_word(relations[w], chosen);
      const double to_plus = (P - id).cwiseAbs().maxCoeff();
      const double to_minus = (P + id).cwiseAbs().maxCoeff();
      if (to_plus > 1e-8 && to_minus > 1e-8) {
        throw std::invalid_argument("lift_group: relation " + std::to_string(w) +
                                    " does not evaluate to +-Id in the spin realization");
      }
      if (to_plus > 1e-8) {
        ok = false;
        obstructing = static_cast<int>(w);
        break;
      }
    }
    if (ok) {
      out.lifted = std::move(chosen);
      found = true;
    }
  }
  if (!found) {
    throw std::domain_error("no lift: relation " + std::to_string(obstructing) +
                            " evaluates to -Id under every sign assignment");
  }
  out.fixed_basis = fixed_spinors(out, &out.fixed_dim);
  return out;
}

MatrixXcd fixed_spinors(const LiftedGroup& lifted, int* dim_out) {
  const int d = lifted.rep.dim();
  const int rows = static_cast<int>(lifted.lifted.size() + lifted.algebra_action.size()) * d;
  MatrixXcd stack(rows, d);
  int at = 0;
  for (const MatrixXcd& s : lifted.lifted) {
    stack.middleRows(at, d) = s - MatrixXcd::Identity(d, d);
    at += d;
  }
  for (const MatrixXcd& a : lifted.algebra_action) {
    stack.middleRows(at, d) = a;
    at += d;
  }
  MatrixXcd basis = nullspace_complex(stack.topRows(at));
  if (dim_out) *dim_out = static_cast<int>(basis.cols());
  return basis;
}

CorrespondenceReport lorentz_fixed_correspondence(const LiftedGroup& lifted) {
  const int n = lifted.n;
  const SpinRep lrep = clifford_generators(1, n + 1);
  const int D = lrep.dim();
  const MatrixXcd id2 = MatrixXcd::Identity(2, 2);
  std::vector<MatrixXcd> constraints;
  for (const MatrixXcd& s : lifted.lifted) {
    constraints.push_back((Eigen::kroneckerProduct(s, id2).eval() - MatrixXcd::Identity(D, D)));
  }
  for (const MatrixXcd& a : lifted.algebra_action) {
    constraints.push_back(Eigen::kroneckerProduct(a, id2).eval());
  }
  // 1 + l.x fixes v exactly when l.(e_j.v) = 0 for every screen direction.
  for (int j = 0; j < n; ++j) constraints.push_back(lrep.ell() * lrep.screen(j));

  MatrixXcd stack(static_cast<int>(constraints.size()) * D, D);
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    stack.middleRows(static_cast<int>(c) * D, D) = constraints[c];
  }
  MatrixXcd basis = nullspace_complex(stack);

  CorrespondenceReport report;
  report.riemannian_dim = lifted.fixed_dim;
  report.lorentzian_dim = static_cast<int>(basis.cols());
  // Tensor ordering puts the u_1 component of Delta_{1,1} at even indices.
  double v1 = 0.0;
  for (int c = 0; c < basis.cols(); ++c) {
    for (int i = 0; i < D; i += 2) v1 = std::max(v1, std::abs(basis(i, c)));
  }
  report.v1_residual = v1;
  report.equal = report.riemannian_dim == report.lorentzian_dim;
  return report;
}

std::vector<MatrixXd> su_algebra(int m) {
  if (m < 1) throw std::invalid_argument("su_algebra: m must be positive");
  std::vector<MatrixXd> out;
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      out.push_back(complex_to_real(unit_entry(m, j, k, 1.0) - unit_entry(m, k, j, 1.0)));
      out.push_back(complex_to_real(unit_entry(m, j, k, kI) + unit_entry(m, k, j, kI)));
    }
  }
  for (int j = 0; j + 1 < m; ++j) {
    out.push_back(complex_to_real(unit_entry(m, j, j, kI) - unit_entry(m, j + 1, j + 1, kI)));
  }
  return out;
}

std::vector<MatrixXd> sp_algebra(int k) {
  if (k < 1) throw std::invalid_argument("sp_algebra: k must be positive");
  std::vector<MatrixXcd> blocks;  // complex 2k x 2k in u(2k) cap sp(2k, C)
  auto assemble = [&](const MatrixXcd& A, const MatrixXcd& B) {
    MatrixXcd X = MatrixXcd::Zero(2 * k, 2 * k);
    X.topLeftCorner(k, k) = A;
    X.topRightCorner(k, k) = B;
    X.bottomLeftCorner(k, k) = -B.conjugate();
    X.bottomRightCorner(k, k) = A.conjugate();
    return X;
  };
  const MatrixXcd zero = MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j) blocks.push_back(assemble(unit_entry(k, j, j, kI), zero));
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      blocks.push_back(assemble(unit_entry(k, j, l, 1.0) - unit_entry(k, l, j, 1.0), zero));
      blocks.push_back(assemble(unit_entry(k, j, l, kI) + unit_entry(k, l, j, kI), zero));
    }
  }
  for (int j = 0; j < k; ++j) {
    for (int l = j; l < k; ++l) {
      MatrixXcd sym = unit_entry(k, j, l, 1.0);
      if (l != j) sym += unit_entry(k, l, j, 1.0);
      blocks.push_back(assemble(zero, sym));
      blocks.push_back(assemble(zero, (kI * sym).eval()));
    }
  }
  std::vector<MatrixXd> out;
  for (const MatrixXcd& X : blocks) out.push_back(complex_to_real(X));
  return out;
}

std::vector<MatrixXd> g2_algebra() {
  AlternatingForm phi;
  phi.set({0, 1, 2}, 1.0);
  phi.set({0, 3, 4}, 1.0);
  phi.set({0, 5, 6}, 1.0);
  phi.set({1, 3, 5}, 1.0);
  phi.set({1, 4, 6}, -1.0);
  phi.set({2, 3, 6}, -1.0);
  phi.set({2, 4, 5}, -1.0);
  std::vector<MatrixXd> out = form_stabilizer(7, 3, phi);
  if (out.size() != 14) throw std::logic_error("g2_algebra: stabilizer dimension mismatch");
  return out;
}

std::vector<MatrixXd> spin7_algebra() {
  // Cayley form e0 ^ phi + *phi on R^8 for the 3-form used in g2_algebra
  // (indices shifted up by one, e0 the extra direction).
  AlternatingForm cayley;
  cayley.set({0, 1, 2, 3}, 1.0);
  cayley.set({0, 1, 4, 5}, 1.0);
  cayley.set({0, 1, 6, 7}, 1.0);
  cayley.set({0, 2, 4, 6}, 1.0);
  cayley.set({0, 2, 5, 7}, -1.0);
  cayley.set({0, 3, 4, 7}, -1.0);
  cayley.set({0, 3, 5, 6}, -1.0);
  cayley.set({4, 5, 6, 7}, 1.0);
  cayley.set({2, 3, 6, 7}, 1.0);
  cayley.set({2, 3, 4, 5}, 1.0);
  cayley.set({1, 3, 5, 7}, 1.0);
  cayley.set({1, 3, 4, 6}, -1.0);
  cayley.set({1, 2, 5, 6}, -1.0);
  cayley.set({1, 2, 4, 7}, -1.0);
  std::vector<MatrixXd> out = form_stabilizer(8, 4, cayley);
  if (out.size() != 21) throw std::logic_error("spin7_algebra: stabilizer dimension mismatch");
  return out;
}

MatrixXd su_conjugation(int m) {
  MatrixXd K = MatrixXd::Identity(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) K(2 * j + 1, 2 * j + 1) = -1.0;
  return K;
}

MatrixXd complex_scalar_rotation(int m, double theta) {
  return complex_to_real(Complex(std::cos(theta), std::sin(theta)) *
                         MatrixXcd::Identity(m, m));
}

WangEntry wang_table_lookup(const std::string& preset, int a, int b) {
  WangEntry e;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument("wang_table_lookup: " + preset + ": " + what);
  };
  if (preset == "su") {
    require(a >= 2, "m must be at least 2");
    e = {"SU(" + std::to_string(a) + ")", 2 * a, 2, "", true};
  } else if (preset == "su-z2") {
    require(a >= 2, "m must be at least 2");
    require(a % 4 == 0, "m must be divisible by 4");
    e = {"SU(" + std::to_string(a) + ") : Z2", 2 * a, 1, "m divisible by 4", true};
  } else if (preset == "sp") {
    require(a >= 1, "k must be at least 1");
    e = {"Sp(" + std::to_string(a) + ")", 4 * a, a + 1, "", true};
  } else if (preset == "sp-zd") {
    require(a >= 1, "k must be at least 1");
    require(b > 1 && b % 2 == 1, "d must be odd and greater than 1");
    require((a + 1) % b == 0, "d must divide k+1");
    e = {"Sp(" + std::to_string(a) + ") x Z" + std::to_string(b), 4 * a, (a + 1) / b,
         "d odd, d > 1, d divides k+1", true};
  } else if (preset == "sp-z2d") {
    require(a >= 1 && a % 2 == 0, "k must be even");
    require(b > 1, "d must be greater than 1");
    e = {"Sp(" + std::to_string(a) + ") . Z" + std::to_string(2 * b), 4 * a,
         2 * (a / (2 * b)) + 1, "k even, d > 1", true};
  } else if (preset == "sp-q4d") {
    require(a >= 1 && a % 2 == 0, "k must be even");
    require(b > 1, "d must be greater than 1");
    const int base = a / (2 * b);
    e = {"Sp(" + std::to_string(a) + ") . Q" + std::to_string(4 * b), 4 * a,
         (a / 2) % 2 == 1 ? base : base + 1, "k even, d > 1", true};
  } else if (preset == "sp-b4d") {
    require(a >= 1 && a % 2 == 0, "k must be even");
    require(b == 6 || b == 12 || b == 30, "d must be 6, 12 or 30");
    e = {"Sp(" + std::to_string(a) + ") . B" + std::to_string(4 * b), 4 * a, -1,
         "k even; dimension deferred to the classification literature", false};
  } else if (preset == "sp-gamma") {
    require(a >= 1 && a % 2 == 0, "k must be even");
    e = {"Sp(" + std::to_string(a) + ") . Gamma", 4 * a, 1, "k even", true};
  } else if (preset == "spin7") {
    e = {"Spin(7)", 8, 1, "", true};
  } else if (preset == "g2") {
    e = {"G2", 7, 1, "", true};
  } else {
    throw std::invalid_argument("wang_table_lookup: unknown preset '" + preset + "'");
  }
  return e;
}

}  // namespace lorhol
