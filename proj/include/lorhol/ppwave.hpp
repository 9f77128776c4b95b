#pragma once

// Metric charts 2 dv du + 2F du^2 + sum (dx^i)^2 on a plane domain times a
// flat base, with exact Christoffel symbols, curvature, the parallel
// transport ODE in the frame (d_v, d_1, ..., d_n, d_u - F d_v), holonomy
// algebra sampling, and the symmetric-space constructor.
//
// Coordinates are always ordered (v, u, x^1, ..., x^n); F is a polynomial in
// all coordinates plus optional cosine terms in x (exactly differentiable),
// optionally divided by u^2 on the half-plane domain.

#include <optional>
#include <vector>

#include "lorhol/algebra.hpp"
#include "lorhol/minkowski.hpp"
#include "lorhol/ode.hpp"
#include "lorhol/polynomial.hpp"

namespace lorhol {

enum class PlaneDomain { FullPlane, PuncturedPlane, HalfPlaneU };
enum class BaseKind { FlatRn, FlatTorus };

// amp * cos(freq . x + phase), freq over the screen coordinates only.
struct CosTerm {
  double amp = 0.0;
  VectorXd freq;
  double phase = 0.0;
};

struct PpWaveChart {
  int n = 0;
  PlaneDomain domain = PlaneDomain::FullPlane;
  BaseKind base = BaseKind::FlatRn;
  MatrixXd torus_lattice;          // columns = lattice generators (torus base)
  Polynomial f;                    // in (v, u, x); numerator when u_weight set
  std::vector<CosTerm> trig;       // screen-periodic part of f
  bool dv_zero = false;            // recorded flag: f independent of v
  bool u_weight = false;           // F = f / u^2 (requires half-plane domain)
  std::optional<VectorXd> hessian_point;  // certificate: det Hess_x F != 0

  // Metric coefficient F and its exact first/second derivatives; indices are
  // coordinate indices (0 = v, 1 = u, 2.. = x).
  double F(const VectorXd& p) const;
  double dF(int i, const VectorXd& p) const;
  double d2F(int i, int j, const VectorXd& p) const;

  bool in_domain(const VectorXd& p) const;
  MatrixXd screen_hessian(const VectorXd& p) const;  // n x n Hess_x F

  // Frame matrix at p: columns (d_v, d_1..d_n, d_u - F d_v) in coordinates.
  MatrixXd frame(const VectorXd& p) const;
  MatrixXd frame_inverse(const VectorXd& p) const;
};

// Validates flags (v-degree zero when dv_zero, half-plane when u_weight) and
// the Hessian certificate when one is supplied.
PpWaveChart make_ppwave_chart(PpWaveChart chart);

// The nonzero covariant derivative families at a point (all other coordinate
// combinations vanish).
struct ChristoffelTable {
  double dv_dv_coeff = 0.0;    // nabla_{d_u} d_v = (d_v F) d_v
  VectorXd screen_to_dv;       // nabla_{d_u} d_i = (d_i F) d_v
  VectorXd uu_components;      // nabla_{d_u} d_u in coordinates (v, u, x)
};

ChristoffelTable christoffel(const PpWaveChart& chart, const VectorXd& p);

// Full connection contraction A(Y)^l_k = Gamma^l_{mk} Y^m and its coordinate
// derivative, both exact.
MatrixXd christoffel_contraction(const PpWaveChart& chart, const VectorXd& p, const VectorXd& Y);
MatrixXd christoffel_contraction_derivative(const PpWaveChart& chart, const VectorXd& p,
                                            int direction, const VectorXd& Y);

// Curvature endomorphism R(X, Y) at p in coordinates, for constant coordinate
// fields X, Y.
MatrixXd curvature(const PpWaveChart& chart, const VectorXd& p, const VectorXd& X,
                   const VectorXd& Y);

// Piecewise path t -> (v, u, x)(t); each segment parameterized over [0,1] by
// polynomials or a circular arc in a coordinate 2-plane.
struct PathSegment {
  enum class Kind { Polynomial, Arc } kind = Kind::Polynomial;
  std::vector<Polynomial> coords;  // univariate in t (Polynomial kind)
  int arc_i = 0, arc_j = 1;        // coordinate indices of the arc plane
  VectorXd arc_center;             // full coordinate point
  double arc_radius = 1.0;
  double arc_angle0 = 0.0, arc_angle1 = 0.0;

  VectorXd position(double t) const;
  VectorXd velocity(double t) const;
};

struct PathSpec {
  std::vector<PathSegment> segments;

  VectorXd start() const { return segments.front().position(0.0); }
  VectorXd end() const { return segments.back().position(1.0); }
};

// Straight segment / polygonal chain / coordinate-plane rectangle loop.
PathSpec straight_path(const VectorXd& from, const VectorXd& to);
PathSpec polygon_path(const std::vector<VectorXd>& waypoints);
PathSpec rectangle_loop(const VectorXd& base, int coord_a, int coord_b, double len_a,
                        double len_b);

// Validates junction continuity (1e-12) and domain containment on samples.
void validate_path(const PpWaveChart& chart, const PathSpec& path);

// Parallel transport along the path, expressed frame-to-frame; the result is
// Lorentz within tol. Throws std::runtime_error("integration failure") from
// the integrator on tolerance breakdown.
MatrixXd parallel_transport(const PpWaveChart& chart, const PathSpec& path, double tol = 1e-8,
                            const OdeOptions& ode = {});

// Holonomy-algebra sampling: conjugated curvature endomorphisms
// P^{-1} R(X,Y) P over the sample list, orthonormalized.
struct ASample {
  PathSpec path;  // from the base point to the curvature evaluation point
  VectorXd X, Y;  // coordinate tangent vectors at the endpoint
};

std::vector<ASample> default_sample_spec(const PpWaveChart& chart, const VectorXd& base);

std::vector<ParabolicAlgebraElement> ambrose_singer_sample(const PpWaveChart& chart,
                                                           const VectorXd& base,
                                                           const std::vector<ASample>& samples,
                                                           double tol = 1e-8);

// Symmetric-space data: lambda profile with the derived reflection data when
// all lambda_i = -k_i^2 with pairwise-rational k ratios.
struct CahenWallachSpec {
  VectorXd lambda;
  bool reflection_case = false;  // all lambda_i = -k_i^2, k ratios rational
  VectorXd k;                    // defined in the reflection case
  double beta = 0.0;             // min r > 0 with r k_i integer for all i
};

CahenWallachSpec make_cahen_wallach_spec(const VectorXd& lambda);

// Chart with f = (1/2) sum lambda_j (x^j)^2, so the du^2 coefficient is
// exactly sum lambda_j (x^j)^2.
PpWaveChart build_cahen_wallach(const CahenWallachSpec& spec);

// Continued-fraction rational approximation: best p/q with q <= max_den.
// Returns false when |x - p/q| > tol for every candidate.
bool rational_approx(double x, long max_den, double tol, long* p, long* q);

}  // namespace lorhol
