#include "lorhol/ode.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lorhol {

namespace {

using Eigen::MatrixXd;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order weights (includes the FSAL stage).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct StepOut {
  MatrixXd y5;      // 5th-order solution
  double err;       // max-abs embedded error estimate
};

StepOut dp_step(const std::function<MatrixXd(double)>& A, const MatrixXd& Y, double t,
                double h) {
  MatrixXd k1 = A(t) * Y;
  MatrixXd k2 = A(t + c2 * h) * (Y + h * a21 * k1);
  MatrixXd k3 = A(t + c3 * h) * (Y + h * (a31 * k1 + a32 * k2));
  MatrixXd k4 = A(t + c4 * h) * (Y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  MatrixXd k5 = A(t + c5 * h) * (Y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  MatrixXd k6 = A(t + h) * (Y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  MatrixXd y5 = Y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  MatrixXd k7 = A(t + h) * y5;
  MatrixXd y4 = Y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double err = (y5 - y4).cwiseAbs().maxCoeff();
  return {std::move(y5), err};
}

// Fixed-step integration over prescribed sub-steps (for verification).
MatrixXd integrate_fixed(const std::function<MatrixXd(double)>& A, MatrixXd Y,
                         const std::vector<std::pair<double, double>>& steps) {
  for (const auto& [t, h] : steps) {
    Y = dp_step(A, Y, t, h / 2).y5;
    Y = dp_step(A, Y, t + h / 2, h / 2).y5;
  }
  return Y;
}

}  // namespace

OdeResult integrate_linear(const std::function<Eigen::MatrixXd(double)>& A,
                           const Eigen::MatrixXd& Y0, double t0, double t1,
                           const OdeOptions& options) {
  OdeResult result;
  MatrixXd Y = Y0;
  const double span = t1 - t0;
  if (span == 0.0) {
    result.value = Y;
    return result;
  }
  const double dir = span > 0 ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(std::abs(options.initial_step), std::abs(span));
  std::vector<std::pair<double, double>> accepted;

  int iterations = 0;
  while (dir * (t1 - t) > 1e-15) {
    if (++iterations > options.max_steps) {
      throw std::runtime_error("integration failure: step budget exhausted");
    }
    if (dir * (t + h) > dir * t1) h = t1 - t;
    StepOut step = dp_step(A, Y, t, h);
    if (step.err <= options.abs_tol) {
      accepted.emplace_back(t, h);
      t += h;
      Y = std::move(step.y5);
      ++result.accepted_steps;
    } else {
      ++result.rejected_steps;
    }
    double scale = step.err > 0
                       ? 0.9 * std::pow(options.abs_tol / step.err, 0.2)
                       : 5.0;
    scale = std::min(5.0, std::max(0.2, scale));
    h *= scale;
    if (std::abs(h) < options.min_step) {
      throw std::runtime_error("integration failure: step size underflow");
    }
  }
  result.value = Y;

  if (options.verify) {
    MatrixXd refined = integrate_fixed(A, Y0, accepted);
    result.verification_error = (refined - Y).cwiseAbs().maxCoeff();
    if (result.verification_error > options.verify_factor * options.abs_tol) {
      throw std::runtime_error("integration failure: half-step verification mismatch");
    }
  }
  return result;
}

}  // namespace lorhol
