#pragma once

// Linear algebra for the Lorentz group O(1,n+1) in the null frame
// (l, e_1, ..., e_n, l*), the parabolic stabilizer P of the null line R·l,
// and tolerance-aware word closure of matrix groups.

#include <optional>
#include <string>
#include <vector>

#include "lorhol/linalg.hpp"

namespace lorhol {

// Default tolerance for the Lorentz-orthogonality check M^T G M = G.
inline constexpr double kLorentzTol = 1e-9;
// Default dedup threshold (max-abs entry difference) for group sampling.
inline constexpr double kDedupTol = 1e-8;

// Gram matrix of the null frame: 1 in the (1,n+2)/(n+2,1) corners, identity
// in the middle block. Throws std::invalid_argument for n < 1.
MatrixXd gram_matrix(int n);

// True if M^T G M = G holds within tol (G from the matching frame).
bool is_lorentz(const MatrixXd& M, double tol = kLorentzTol);

// An element of P = (R* x O(n)) |x R^n, stored as (a, A, x) with the block
// matrix realization
//   [ a  x^T  -x^T x/(2a) ]
//   [ 0   A     -A x / a  ]
//   [ 0   0       1/a     ]
struct ParabolicElement {
  double a = 1.0;
  MatrixXd A;  // n x n orthogonal
  VectorXd x;  // n-vector

  int n() const { return static_cast<int>(x.size()); }
  MatrixXd matrix() const;

  static ParabolicElement identity(int n);
};

// Validates a != 0 and A orthogonal; throws std::invalid_argument otherwise.
ParabolicElement make_parabolic(double a, const MatrixXd& A, const VectorXd& x);

// Inverse of decomposition: reads off (a, A, x) from a Lorentz matrix that
// stabilizes R·l. Throws std::domain_error ("not parabolic") when the
// lower-left blocks are nonzero beyond tol, std::invalid_argument when M is
// not Lorentz within tol.
ParabolicElement decompose_parabolic(const MatrixXd& M, double tol = kLorentzTol);

// Group law in (a, A, x) coordinates (matches matrix multiplication).
ParabolicElement parabolic_product(const ParabolicElement& p, const ParabolicElement& q);
ParabolicElement parabolic_inverse(const ParabolicElement& p);

// Word closure of a finite generator list.
struct GroupSample {
  std::vector<MatrixXd> generators;
  std::vector<MatrixXd> elements;        // deduplicated words, BFS order
  std::vector<int> growth_profile;       // element count after each word length
  int max_word_len = 0;
  bool saturated = false;                // final BFS level added nothing
  bool likely_continuous = false;        // near-duplicate elements were seen
  double dedup_tol = kDedupTol;
};

// BFS over generators and their inverses up to max_word_len; deduplication by
// max-abs entry distance. Throws std::invalid_argument on a non-Lorentz
// generator.
GroupSample group_closure(const std::vector<MatrixXd>& generators, int max_word_len,
                          double tol = kDedupTol);

// (a, A) class of a parabolic sample element with the translation part
// collapsed.
struct ScaleOrthogonalClass {
  double a = 1.0;
  MatrixXd A;
  int multiplicity = 0;  // sample elements falling into this class
};

struct DiscretePart {
  std::vector<ScaleOrthogonalClass> classes;
  bool lower_bound_only = false;  // sample was not saturated
};

// Classifies sample elements by their (a, A) block after decompose_parabolic.
// Throws std::domain_error if some element is not parabolic.
DiscretePart discrete_part(const GroupSample& sample, double tol = kDedupTol);

}  // namespace lorhol
