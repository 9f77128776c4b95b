#include "lorhol/cylinder.hpp"

#include <cmath>
#include <stdexcept>

#include "lorhol/ode.hpp"

namespace lorhol {

double CylinderProfile::f(double s) const {
  switch (kind) {
    case Kind::Tanh:
      return lambda_bar * std::tanh(rate * s);
    case Kind::LinearCapped:
      return rate * s;
  }
  return 0.0;
}

double CylinderProfile::df(double s) const {
  switch (kind) {
    case Kind::Tanh: {
      double c = std::cosh(rate * s);
      return lambda_bar * rate / (c * c);
    }
    case Kind::LinearCapped:
      return rate;
  }
  return 0.0;
}

double CylinderProfile::ddf(double s) const {
  switch (kind) {
    case Kind::Tanh: {
      double t = std::tanh(rate * s);
      double c = std::cosh(rate * s);
      return -2.0 * lambda_bar * rate * rate * t / (c * c);
    }
    case Kind::LinearCapped:
      return 0.0;
  }
  return 0.0;
}

double CylinderChart::B(const VectorXd& p) const {
  return std::exp(2.0 * p(1)) * profile.df(p(1)) + 2.0 * a + 2.0 * p(0);
}

double CylinderChart::W(const VectorXd& p) const {
  return 2.0 * (std::exp(-2.0 * p(1)) * (p(0) + a) + profile.lambda_bar - profile.f(p(1)));
}

double CylinderChart::dB(int i, const VectorXd& p) const {
  if (i == 0) return 2.0;
  if (i == 1) {
    const double e2s = std::exp(2.0 * p(1));
    return 2.0 * e2s * profile.df(p(1)) + e2s * profile.ddf(p(1));
  }
  return 0.0;
}

double CylinderChart::dW(int i, const VectorXd& p) const {
  if (i == 0) return 2.0 * std::exp(-2.0 * p(1));
  if (i == 1) {
    return 2.0 * (-2.0 * std::exp(-2.0 * p(1)) * (p(0) + a) - profile.df(p(1)));
  }
  return 0.0;
}

MatrixXd CylinderChart::metric_matrix(const VectorXd& p) const {
  MatrixXd g = MatrixXd::Zero(n + 2, n + 2);
  g(0, 0) = -1.0;
  const double b = B(p), w = W(p);
  g(1, 1) = b * b;
  for (int i = 0; i < n; ++i) g(2 + i, 2 + i) = w * w;
  return g;
}

bool CylinderChart::in_domain(const VectorXd& p) const {
  return p(0) > -a && B(p) > 0.0 && W(p) > 0.0;
}

MatrixXd CylinderChart::frame(const VectorXd& p) const {
  const double b = B(p), w = W(p);
  const double r = 1.0 / std::sqrt(2.0);
  MatrixXd E = MatrixXd::Zero(n + 2, n + 2);
  E(0, 0) = r;            // l = (d_t + d_s / B) / sqrt(2)
  E(1, 0) = r / b;
  for (int i = 0; i < n; ++i) E(2 + i, 1 + i) = 1.0 / w;
  E(0, n + 1) = -r;       // l* = (-d_t + d_s / B) / sqrt(2)
  E(1, n + 1) = r / b;
  return E;
}

MatrixXd CylinderChart::frame_inverse(const VectorXd& p) const {
  const double b = B(p), w = W(p);
  const double r = 1.0 / std::sqrt(2.0);
  MatrixXd Ei = MatrixXd::Zero(n + 2, n + 2);
  Ei(0, 0) = r;           // l coefficient = (c_t + B c_s) / sqrt(2)
  Ei(0, 1) = r * b;
  for (int i = 0; i < n; ++i) Ei(1 + i, 2 + i) = w;
  Ei(n + 1, 0) = -r;      // l* coefficient = (B c_s - c_t) / sqrt(2)
  Ei(n + 1, 1) = r * b;
  return Ei;
}

CylinderChart build_cylinder_metric(const CylinderProfile& profile, double a, int n) {
  if (a <= 0.0) throw std::invalid_argument("cylinder: offset a must be positive");
  if (n < 1) throw std::invalid_argument("cylinder: base dimension must be >= 1");
  const double span = profile.kind == CylinderProfile::Kind::LinearCapped ? profile.cap : 3.0;
  for (int i = 0; i <= 64; ++i) {
    const double s = -span + 2.0 * span * i / 64.0;
    if (profile.df(s) <= 0.0) {
      throw std::invalid_argument("cylinder: profile is not strictly increasing");
    }
    if (profile.f(s) >= profile.lambda_bar) {
      throw std::invalid_argument("cylinder: profile exceeds its bound");
    }
  }
  if (std::abs(profile.f(0.0)) > 1e-12) {
    throw std::invalid_argument("cylinder: profile must vanish at s = 0");
  }
  CylinderChart chart;
  chart.n = n;
  chart.a = a;
  chart.profile = profile;
  return chart;
}

MatrixXd cylinder_metric_from_shape(const CylinderChart& chart, const VectorXd& p) {
  // Shape operator C = diag(e^{2s} f', 2 e^{2s} (L - f) Id) acting on the
  // product metric g_F = ds^2 + e^{-4s} g_N; the metric is
  // -dt^2 + g_F((C + 2(t+a)) . , (C + 2(t+a)) . ).
  const int n = chart.n;
  const double s = p(1), t = p(0);
  const double e2s = std::exp(2.0 * s);
  const double c_s = e2s * chart.profile.df(s);
  const double c_n = 2.0 * e2s * (chart.profile.lambda_bar - chart.profile.f(s));
  MatrixXd g = MatrixXd::Zero(n + 2, n + 2);
  g(0, 0) = -1.0;
  const double shift = 2.0 * (t + chart.a);
  g(1, 1) = (c_s + shift) * (c_s + shift);
  const double wn = (c_n + shift) * (c_n + shift) * std::exp(-4.0 * s);
  for (int i = 0; i < n; ++i) g(2 + i, 2 + i) = wn;
  return g;
}

MatrixXd cylinder_christoffel_contraction(const CylinderChart& chart, const VectorXd& p,
                                          const VectorXd& Y) {
  const int n = chart.n;
  const double b = chart.B(p), w = chart.W(p);
  const double bt = chart.dB(0, p), bs = chart.dB(1, p);
  const double wt = chart.dW(0, p), ws = chart.dW(1, p);
  MatrixXd A = MatrixXd::Zero(n + 2, n + 2);
  A(0, 1) = b * bt * Y(1);                       // Gamma^t_{ss}
  A(1, 1) = (bt / b) * Y(0) + (bs / b) * Y(1);   // Gamma^s_{ts}, Gamma^s_{ss}
  A(1, 0) = (bt / b) * Y(1);
  for (int i = 0; i < n; ++i) {
    A(0, 2 + i) = w * wt * Y(2 + i);             // Gamma^t_{ij}
    A(1, 2 + i) = -(w * ws / (b * b)) * Y(2 + i);
    A(2 + i, 0) = (wt / w) * Y(2 + i);
    A(2 + i, 1) = (ws / w) * Y(2 + i);
    A(2 + i, 2 + i) = (wt / w) * Y(0) + (ws / w) * Y(1);
  }
  return A;
}

namespace {

MatrixXd coordinate_propagator(const CylinderChart& chart, const std::vector<VectorXd>& pts) {
  const int dim = chart.n + 2;
  MatrixXd Y = MatrixXd::Identity(dim, dim);
  OdeOptions options;
  options.abs_tol = 1e-11;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const VectorXd from = pts[i], to = pts[i + 1];
    auto A = [&](double t) {
      VectorXd pos = from + t * (to - from);
      if (!chart.in_domain(pos)) {
        throw std::runtime_error("cylinder transport: path exits the domain");
      }
      VectorXd vel = to - from;
      return MatrixXd(-cylinder_christoffel_contraction(chart, pos, vel));
    };
    Y = integrate_linear(A, Y, 0.0, 1.0, options).value;
  }
  return Y;
}

}  // namespace

MatrixXd cylinder_transport(const CylinderChart& chart, const std::vector<VectorXd>& waypoints,
                            double tol) {
  if (waypoints.size() < 2) throw std::invalid_argument("cylinder transport: need a path");
  MatrixXd Y = coordinate_propagator(chart, waypoints);
  MatrixXd T = chart.frame_inverse(waypoints.back()) * Y * chart.frame(waypoints.front());
  if (!is_lorentz(T, tol)) {
    throw std::runtime_error("integration failure: cylinder transport not Lorentz");
  }
  return T;
}

CylinderHolonomySample cylinder_holonomy_sample(const CylinderChart& chart,
                                                const VectorXd& base) {
  const int n = chart.n;
  const int dim = n + 2;
  const double h = 1e-5;

  auto curvature_at = [&](const VectorXd& p, const VectorXd& X, const VectorXd& Y) {
    MatrixXd R = MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
      if (X(s) == 0.0 && Y(s) == 0.0) continue;
      VectorXd pp = p, pm = p;
      pp(s) += h;
      pm(s) -= h;
      MatrixXd dAY = (cylinder_christoffel_contraction(chart, pp, Y) -
                      cylinder_christoffel_contraction(chart, pm, Y)) /
                     (2.0 * h);
      MatrixXd dAX = (cylinder_christoffel_contraction(chart, pp, X) -
                      cylinder_christoffel_contraction(chart, pm, X)) /
                     (2.0 * h);
      R += X(s) * dAY - Y(s) * dAX;
    }
    MatrixXd AX = cylinder_christoffel_contraction(chart, p, X);
    MatrixXd AY = cylinder_christoffel_contraction(chart, p, Y);
    return MatrixXd(R + AX * AY - AY * AX);
  };

  std::vector<VectorXd> points = {base};
  for (int c = 0; c < dim; ++c) {
    VectorXd p = base;
    p(c) += 0.2;
    if (chart.in_domain(p)) points.push_back(p);
  }

  std::vector<VectorXd> flat;
  std::vector<MatrixXd> raw;
  for (const auto& q : points) {
    MatrixXd Y = coordinate_propagator(chart, {base, q});
    MatrixXd T = chart.frame_inverse(q) * Y * chart.frame(base);
    MatrixXd Tinv = T.inverse();
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) {
        MatrixXd R = curvature_at(q, VectorXd::Unit(dim, a), VectorXd::Unit(dim, b));
        MatrixXd R_frame = chart.frame_inverse(q) * R * chart.frame(q);
        MatrixXd conj = Tinv * R_frame * T;
        if (conj.cwiseAbs().maxCoeff() < 1e-7) continue;
        raw.push_back(conj);
        flat.push_back(vec(conj));
      }
    }
  }

  CylinderHolonomySample result;
  MatrixXd span = orthonormal_span(flat, 1e-6);
  bool translations = true;
  std::vector<MatrixXd> basis;
  for (int j = 0; j < span.cols(); ++j) {
    MatrixXd M = Eigen::Map<const MatrixXd>(span.col(j).data(), dim, dim);
    basis.push_back(M);
    if ((M * M * M).cwiseAbs().maxCoeff() > 1e-5) translations = false;
  }
  for (size_t i = 0; i < basis.size() && translations; ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      if ((basis[i] * basis[j] - basis[j] * basis[i]).cwiseAbs().maxCoeff() > 1e-5) {
        translations = false;
        break;
      }
    }
  }
  result.span = std::move(basis);
  result.translations_only = translations;
  return result;
}

}  // namespace lorhol
