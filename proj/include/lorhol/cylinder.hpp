#pragma once

// Lorentzian cylinder metrics -dt^2 + (C + 2(t+a)Id)*g_F over F = R x N with
// g_F = ds^2 + e^{-4s} g_N, restricted to the closed-form family where the
// shape operator is C = diag(e^{2s} f'(s), 2 e^{2s} (L - f(s)) Id) for a
// bounded strictly increasing profile f with f(0) = 0 and f < L. In closed
// form:
//   g = -dt^2 + (e^{2s} f'(s) + 2a + 2t)^2 ds^2
//       + 4 (e^{-2s} t + e^{-2s} a + L - f(s))^2 g_N,
// with flat g_N. Coordinates are ordered (t, s, x^1..x^n).

#include <vector>

#include "lorhol/linalg.hpp"
#include "lorhol/minkowski.hpp"

namespace lorhol {

struct CylinderProfile {
  enum class Kind { Tanh, LinearCapped } kind = Kind::Tanh;
  double lambda_bar = 1.0;  // upper bound L
  double rate = 1.0;        // tanh rate, or the slope of the linear profile
  double cap = 5.0;         // validity half-interval for the linear profile

  double f(double s) const;
  double df(double s) const;
  double ddf(double s) const;
};

struct CylinderChart {
  int n = 0;         // dimension of the flat base N
  double a = 1.0;    // offset; chart valid for t > -a
  CylinderProfile profile;

  double B(const VectorXd& p) const;   // ds^2 coefficient root
  double W(const VectorXd& p) const;   // g_N coefficient root
  double dB(int i, const VectorXd& p) const;
  double dW(int i, const VectorXd& p) const;

  MatrixXd metric_matrix(const VectorXd& p) const;
  bool in_domain(const VectorXd& p) const;

  // Orthonormal-to-null frame at p with columns (l, e_1..e_n, l*); transports
  // expressed in it are Lorentz for the standard Gram matrix.
  MatrixXd frame(const VectorXd& p) const;
  MatrixXd frame_inverse(const VectorXd& p) const;
};

// Validates the profile (monotonicity and the bound f < L on samples) and
// a > 0. Throws std::invalid_argument on violation.
CylinderChart build_cylinder_metric(const CylinderProfile& profile, double a, int n);

// Independent assembly of the metric from the shape operator C and g_F (the
// non-closed-form route); used to cross-check metric_matrix.
MatrixXd cylinder_metric_from_shape(const CylinderChart& chart, const VectorXd& p);

// Connection contraction A(Y)^l_k = Gamma^l_{mk} Y^m at p.
MatrixXd cylinder_christoffel_contraction(const CylinderChart& chart, const VectorXd& p,
                                          const VectorXd& Y);

// Parallel transport around the polygonal loop through the waypoints
// (expressed in the null frame at the start point).
MatrixXd cylinder_transport(const CylinderChart& chart, const std::vector<VectorXd>& waypoints,
                            double tol = 1e-6);

// Curvature conjugation samples around the base point, orthonormalized, as
// Lorentz-algebra matrices in the null frame. With a flat base N the whole
// metric is flat, so the sample is empty (and vacuously translation-only);
// curved bases contribute the screen-translation factor.
struct CylinderHolonomySample {
  std::vector<MatrixXd> span;   // orthonormal basis of the sampled algebra
  bool translations_only = false;  // all elements nilpotent and commuting
};

CylinderHolonomySample cylinder_holonomy_sample(const CylinderChart& chart, const VectorXd& base);

}  // namespace lorhol
