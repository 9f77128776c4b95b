#pragma once

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of linear
// matrix ODEs Y'(t) = A(t) Y(t), with a half-step verification pass.

#include <functional>

#include <Eigen/Dense>

namespace lorhol {

struct OdeOptions {
  double abs_tol = 1e-10;
  double initial_step = 1e-2;
  double min_step = 1e-12;
  int max_steps = 2000000;
  bool verify = true;          // re-integrate on halved accepted steps
  double verify_factor = 100;  // allowed ratio between runs, times abs_tol
};

struct OdeResult {
  Eigen::MatrixXd value;
  int accepted_steps = 0;
  int rejected_steps = 0;
  double verification_error = 0.0;
};

// Integrates Y' = A(t) Y from t0 to t1 with Y(t0) = Y0. Throws
// std::runtime_error("integration failure") when the step size underflows or
// the verification pass disagrees beyond the allowed ratio.
OdeResult integrate_linear(const std::function<Eigen::MatrixXd(double)>& A,
                           const Eigen::MatrixXd& Y0, double t0, double t1,
                           const OdeOptions& options = {});

}  // namespace lorhol
