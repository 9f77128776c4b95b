#pragma once

// Lie-algebra level analysis of subalgebras h of the parabolic algebra
// p = (R + so(n)) |x R^n: classification into the four indecomposable shapes,
// the constructive decoupling of group elements into block-diagonal form, and
// invariant-null-line / normalizer checks.

#include <optional>
#include <string>
#include <vector>

#include "lorhol/minkowski.hpp"

namespace lorhol {

// Element of p written as a triple (a, X, v) with X skew; matrix realization
//   [ a  v^T   0 ]
//   [ 0   X   -v ]
//   [ 0   0   -a ]
struct ParabolicAlgebraElement {
  double aLie = 0.0;
  MatrixXd X;  // n x n skew
  VectorXd v;  // n-vector

  int n() const { return static_cast<int>(v.size()); }
  MatrixXd matrix() const;

  static ParabolicAlgebraElement zero(int n);
};

ParabolicAlgebraElement make_algebra_element(double aLie, const MatrixXd& X, const VectorXd& v);

// Reads (a, X, v) off a matrix in p; throws std::domain_error if the matrix
// does not satisfy m^T G + G m = 0 or fails the parabolic shape.
ParabolicAlgebraElement decompose_algebra(const MatrixXd& m, double tol = 1e-9);

// Bracket in p (commutator of matrix realizations).
ParabolicAlgebraElement bracket(const ParabolicAlgebraElement& x, const ParabolicAlgebraElement& y);

// Flattened coordinates (a; strict upper triangle of X; v), used for all span
// computations on subalgebras.
VectorXd algebra_coordinates(const ParabolicAlgebraElement& e);
ParabolicAlgebraElement algebra_from_coordinates(const VectorXd& c, int n);

struct TypeReport {
  int type = 0;                       // 1..4
  int n = 0;                          // screen dimension
  std::vector<MatrixXd> g_basis;      // so(n)-projection of h
  std::vector<MatrixXd> center_basis; // center z of g
  std::vector<MatrixXd> derived_basis;// derived algebra g'
  // Type 3: functional phi on z expressed in center_basis coordinates
  // (phi(sum c_i Z_i) = phi_coeffs . c).
  VectorXd phi_coeffs;
  // Type 4: splitting R^n = R^k + R^(n-k); columns of k_basis span the factor
  // coupled to the center, columns of trans_basis span the translations
  // contained in h. psi maps center coordinates to k_basis coordinates.
  int k = 0;
  MatrixXd k_basis;      // n x k
  MatrixXd trans_basis;  // n x (n-k)
  MatrixXd psi;          // k x dim(z)
  // Orthonormal basis of the whole subalgebra in flattened coordinates.
  MatrixXd span_basis;
};

// Classifies the span of `basis` into one of the four shapes. Throws
// std::domain_error with message "not a subalgebra" when brackets leave the
// span, or "indecomposability precondition violated" when the translation
// projection is deficient / no shape matches.
TypeReport classify_type(const std::vector<ParabolicAlgebraElement>& basis, double tol = 1e-7);

// Constructive decoupling: finds Q (a product of exponentials of elements of
// h) such that P·Q is block-diagonal (lies in R* x O(n)). For type 3 the
// resulting scale entry is exactly +-1.
ParabolicElement decouple(const ParabolicElement& P, const TypeReport& report, double tol = 1e-9);

// Common invariant null lines of a set of Lorentz matrices.
struct NullLineResult {
  bool all = false;                 // every null line invariant (identity set)
  bool continuum = false;           // a continuum of invariant null lines
  std::vector<VectorXd> lines;      // representative direction vectors
};

NullLineResult invariant_null_lines(const std::vector<MatrixXd>& generators, double tol = 1e-9);

struct NormalizerResult {
  bool ok = false;
  std::string reason;
  VectorXd witness;  // image of l under g^{-1} when the line check fails
};

// Checks that conjugation by g maps the sampled connected group into its own
// linear span and that g^{-1} maps l back into the unique invariant null
// line. Throws std::domain_error when the generators do not single out a
// unique null line.
NormalizerResult normalizer_check(const std::vector<MatrixXd>& h0_generators, const MatrixXd& g,
                                  double tol = 1e-7);

}  // namespace lorhol
