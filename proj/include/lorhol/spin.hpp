#pragma once

// Clifford algebra representations, spin lifts of orthogonal groups, fixed
// spinor subspaces, and the correspondence between Euclidean fixed spinors of
// G and Lorentzian fixed spinors of G |x R^n, together with the classification
// table of spinor-fixing groups with special connected component.

#include <complex>
#include <string>
#include <vector>

#include "lorhol/linalg.hpp"

namespace lorhol {

using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

// Gamma matrices on a complex module of dimension 2^floor((p+q)/2) with
//   gamma_a gamma_b + gamma_b gamma_a = 2 * bilinear(a, b) * Id.
// Signature (0, q) uses the Euclidean convention gamma^2 = +Id. Signature
// (1, q) is realized in the null basis (l, e_1, ..., e_n, l*) with n = q - 1,
// where bilinear is minus the null-frame Gram matrix and the module carries
// the tensor structure Delta_n (x) Delta_{1,1}; the Delta_{1,1} factor has a
// basis (u_1, u_2) with l.u_1 = sqrt(2) u_2, l.u_2 = 0, l*.u_1 = 0,
// l*.u_2 = -sqrt(2) u_1. Other signatures fold the extra minus signs in by
// imaginary scaling of the first p generators.
struct SpinRep {
  int p = 0, q = 0;
  bool null_frame = false;          // basis order (l, e_1..e_n, l*)
  std::vector<MatrixXcd> gamma;
  MatrixXd bilinear;

  int dim() const { return gamma.empty() ? 1 : static_cast<int>(gamma.front().rows()); }
  int screen_dim() const { return null_frame ? p + q - 2 : 0; }
  const MatrixXcd& ell() const;       // null_frame only
  const MatrixXcd& ell_star() const;  // null_frame only
  const MatrixXcd& screen(int j) const;
};

SpinRep clifford_generators(int p, int q);

// Max-abs residual of the bilinear relations over all generator pairs.
double clifford_relation_residual(const SpinRep& rep);

// The two spin-group preimages of A under the double cover, acting on the
// module of rep; for a null-frame rep, A is the screen rotation extended by
// the identity on the null directions. Throws std::domain_error for
// det A = -1 ("no spin lift").
struct SpinLift {
  MatrixXcd plus, minus;
  double residual = 0.0;  // conjugation-action residual against A
};

SpinLift spin_lift_element(const MatrixXd& A, const SpinRep& rep);

// A subgroup of SO(n) given by discrete generators with defining relation
// words plus skew-symmetric algebra generators of the connected part,
// together with a choice of spin lifts making every relation word evaluate
// to +Id, and the subspace of spinors fixed by the whole lifted group.
struct LiftedGroup {
  int n = 0;
  SpinRep rep;                              // Euclidean Delta_n
  std::vector<MatrixXd> generators;         // discrete part, in SO(n)
  std::vector<std::vector<int>> relations;  // signed 1-based generator indices
  std::vector<MatrixXd> algebra;            // skew generators of the identity component
  std::vector<MatrixXcd> lifted;            // sign-resolved lifts of the generators
  std::vector<MatrixXcd> algebra_action;    // spinor action of the algebra generators
  MatrixXcd fixed_basis;
  int fixed_dim = 0;
};

// Resolves the sign ambiguity of the generator lifts by exhaustive search
// over the 2^r assignments (r <= 8). Throws std::domain_error ("no lift")
// naming the obstructing relation when no assignment works, and
// std::invalid_argument for relations that fail already in SO(n) or words
// that do not evaluate to +-Id in the spin realization.
LiftedGroup lift_group(const std::vector<MatrixXd>& generators,
                       const std::vector<std::vector<int>>& relations,
                       const std::vector<MatrixXd>& algebra);

// Joint kernel of (rho(s_i) - Id) over the lifted generators and of the
// algebra actions; columns form a basis, dim_out receives the dimension.
MatrixXcd fixed_spinors(const LiftedGroup& lifted, int* dim_out = nullptr);

// Fixed spinors of G |x R^n on the (1, n+1) module, where the R^n factor
// acts by {1 + l.x}; the fixed space is forced into Delta_n (x) u_2, so both
// dimensions agree and v1_residual records the size of the u_1 components.
struct CorrespondenceReport {
  int riemannian_dim = 0;
  int lorentzian_dim = 0;
  double v1_residual = 0.0;
  bool equal = false;
};

CorrespondenceReport lorentz_fixed_correspondence(const LiftedGroup& lifted);

// Algebra presets embedded in so(n) as real skew matrices: su(m) in so(2m),
// sp(k) in so(4k), g2 in so(7) (stabilizer of the associative 3-form),
// spin(7) in so(8) (stabilizer of the Cayley 4-form).
std::vector<MatrixXd> su_algebra(int m);
std::vector<MatrixXd> sp_algebra(int k);
std::vector<MatrixXd> g2_algebra();
std::vector<MatrixXd> spin7_algebra();

// Complex conjugation on C^m as an element of O(2m) (in SO(2m) iff m even).
MatrixXd su_conjugation(int m);
// Scalar multiplication by e^{i theta} on C^m as an element of SO(2m).
MatrixXd complex_scalar_rotation(int m, double theta);

// Row of the classification table of groups G in SO(n) with special
// connected component fixing a spinor; N is the fixed-space dimension.
// Presets: "su" (a = m), "su-z2", "sp" (a = k), "sp-zd" (a = k, b = d),
// "sp-z2d", "sp-q4d", "sp-b4d", "sp-gamma", "spin7", "g2". Throws
// std::invalid_argument for unknown presets or violated side conditions.
struct WangEntry {
  std::string group;
  int n = 0;
  int N = 0;
  std::string condition;
  bool computable = true;  // false for the rows that defer the dimension
};

WangEntry wang_table_lookup(const std::string& preset, int a = 0, int b = 0);

}  // namespace lorhol
