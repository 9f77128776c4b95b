#pragma once

// Deck isometries of metric charts 2dvdu + 2F du^2 + sum (dx^i)^2, proper
// discontinuity and quotient-type verdicts for the supported parametric
// families, holonomy representatives of deck transformations, and full
// holonomy assembly for quotients (including flat quotients and the
// symmetric-space quotients).

#include <optional>
#include <string>
#include <vector>

#include "lorhol/algebra.hpp"
#include "lorhol/minkowski.hpp"
#include "lorhol/ppwave.hpp"

namespace lorhol {

// Isometry sigma(v, u, x) = (a v + tau(u, x), u/a + b, O x + w) of a chart
// with v-independent profile; tau is a polynomial in (v, u, x) coordinates
// with v-degree zero, and the base isometry is the affine orthogonal map
// x -> O x + w.
struct DeckIsometry {
  enum class Kind { Translation, SignFlip, Boost, CwCentralizer, Custom };
  Kind kind = Kind::Custom;
  double a = 1.0;
  double b = 0.0;
  Polynomial tau;  // in (v, u, x^1..x^n), independent of v
  MatrixXd O;      // n x n orthogonal
  VectorXd w;      // base translation

  int n() const { return static_cast<int>(w.size()); }
  VectorXd apply(const VectorXd& p) const;
  // Coordinate differential at p: rows/columns ordered (v, u, x).
  MatrixXd differential(const VectorXd& p) const;
};

DeckIsometry make_deck_isometry(DeckIsometry candidate);
DeckIsometry deck_compose(const DeckIsometry& s1, const DeckIsometry& s2);  // s1 after s2
DeckIsometry deck_inverse(const DeckIsometry& s);

// Ready-made generators: pure v-translation t_alpha, the sign flip
// (v,u,x) -> (-v,-u,Ox+w), the boost (e^l v, e^-l u, x+w), and the
// symmetric-space centralizer map (v, u + m*beta*pi, S_m x).
DeckIsometry deck_translation(int n, double alpha);
DeckIsometry deck_sign_flip(int n, const MatrixXd& O, const VectorXd& w);
DeckIsometry deck_boost(int n, double lambda, const VectorXd& w);
DeckIsometry deck_cw_centralizer(const CahenWallachSpec& spec, int m);

// Checks d(sigma)^T g(sigma(p)) d(sigma) = g(p) on a deterministic sample of
// domain points and that sigma maps the domain into itself there. Throws
// std::domain_error naming the failing sample point otherwise.
DeckIsometry validate_isometry(const PpWaveChart& chart, const DeckIsometry& candidate,
                               double tol = 1e-9);

// Parametric family descriptors with known discontinuity behavior.
struct DeckFamily {
  enum class Kind {
    LatticeTranslations,  // lattice columns act on the base
    SignFlipPunctured,    // Z_2 flip of (v,u) on the punctured plane
    BoostsHalfPlane,      // boosts e^{lambda_i} on the half plane u > 0
    BoostPunctured,       // a single boost on the punctured plane
    Trivial,
    Unsupported
  };
  Kind kind = Kind::Unsupported;
  MatrixXd lattice;  // columns = generators (LatticeTranslations)
  VectorXd lambdas;  // boost exponents (BoostsHalfPlane / BoostPunctured)
};

enum class VerdictStatus { Pass, Fail, Unknown };

struct DiscontinuityVerdict {
  VerdictStatus pd1 = VerdictStatus::Unknown;
  VerdictStatus pd2 = VerdictStatus::Unknown;
  std::string witness;    // human-readable failure data
  VectorXd witness_data;  // (k, l, |k l1 + l l2|) or the two sample points
  bool rationality_caveat = false;  // PD1 pass relied on the denominator bound
};

DiscontinuityVerdict check_properly_discontinuous(const DeckFamily& family,
                                                  long max_denominator = 1000);

// Product-group quotient-type data: the projection to the second factor plus
// structural facts about the sections supplied by the family construction.
struct QuotientTypeDescriptor {
  DeckFamily gamma2;
  bool identity_section_pd1 = false;  // Gamma_Id satisfies PD1 (e.g. trivial)
  bool sections_finite = false;       // every section Gamma_sigma finite
  bool sections_pd2 = false;          // alternative to finiteness
};

struct QuotientVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  bool properly_discontinuous = false;  // quotient type implies this
  DiscontinuityVerdict gamma2_verdict;
  std::string reason;
};

QuotientVerdict check_quotient_type(const QuotientTypeDescriptor& descriptor);

// Block-diagonal representative diag(a, O_sigma, 1/a) of the holonomy class
// of a deck isometry on a flat-base chart; requires a v-independent profile.
ParabolicElement deck_representative(const PpWaveChart& chart, const DeckIsometry& sigma);

// Independent route: d(sigma) composed with the numerical parallel transport
// along the polygonal lift base -> waypoints -> sigma^{-1}(base), expressed
// in the frame at the base point. Agrees with deck_representative modulo the
// connected holonomy (a screen translation).
ParabolicElement deck_representative_transport(const PpWaveChart& chart,
                                               const DeckIsometry& sigma, const VectorXd& base,
                                               const std::vector<VectorXd>& waypoints = {},
                                               double tol = 1e-8);

struct HolonomyDescription {
  std::vector<ParabolicElement> discrete_generators;  // representatives phi-hat
  GroupSample sample;                                 // closure of the phi-hats
  DiscretePart discrete;                              // (a, A) classes
  std::vector<ParabolicAlgebraElement> connected_span;  // holonomy algebra sample
  int translation_rank = 0;
  bool has_scaling = false;  // connected scaling factor present
  int type = 0;              // algebra type tag when classification applies
  bool conditional = false;  // discontinuity verdict was unknown
};

// Assembles the full holonomy {phi-hat(sigma_i)} . (connected part) for a
// validated deck group. Throws std::domain_error with the witness when the
// verdict failed; marks the result conditional when it is unknown.
HolonomyDescription quotient_holonomy(const PpWaveChart& chart,
                                      const std::vector<DeckIsometry>& generators,
                                      const VectorXd& base, const QuotientVerdict& verdict,
                                      int word_bound = 4);

// Affine Lorentz group gamma(x) = A x + v; the quotient holonomy of flat
// space is the closure of the linear parts.
struct FlatAffineGroup {
  std::vector<MatrixXd> linear;
  std::vector<VectorXd> translation;
};

GroupSample flat_quotient_holonomy(const FlatAffineGroup& gamma, int word_bound = 6);

// The screw motion matrix on (l, e1, e2, l*): unipotent composed with a
// rotation by theta; finite order iff theta is a rational multiple of pi.
MatrixXd flat_a_theta(double theta);

// Full holonomy of the symmetric-space quotient by the group generated by
// t_alpha and the m-th power of the centralizer isometry. m > 0 requires the
// reflection case; m even gives the connected part only, m odd adds the
// reflection class S_m.
HolonomyDescription cahen_wallach_full_holonomy(const CahenWallachSpec& spec, int m,
                                                double alpha);

}  // namespace lorhol
