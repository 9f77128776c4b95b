#include "lorhol/ppwave.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lorhol {

namespace {

// Numerator part p = polynomial + cosine terms, with exact partials.
double p_eval(const PpWaveChart& c, const VectorXd& pt) {
  double total = c.f.eval(pt);
  for (const auto& term : c.trig) {
    total += term.amp * std::cos(term.freq.dot(pt.tail(c.n)) + term.phase);
  }
  return total;
}

double p_d(const PpWaveChart& c, int i, const VectorXd& pt) {
  double total = c.f.derivative(i).eval(pt);
  if (i >= 2) {
    for (const auto& term : c.trig) {
      total -= term.amp * term.freq(i - 2) *
               std::sin(term.freq.dot(pt.tail(c.n)) + term.phase);
    }
  }
  return total;
}

double p_dd(const PpWaveChart& c, int i, int j, const VectorXd& pt) {
  double total = c.f.derivative(i).derivative(j).eval(pt);
  if (i >= 2 && j >= 2) {
    for (const auto& term : c.trig) {
      total -= term.amp * term.freq(i - 2) * term.freq(j - 2) *
               std::cos(term.freq.dot(pt.tail(c.n)) + term.phase);
    }
  }
  return total;
}

}  // namespace

double PpWaveChart::F(const VectorXd& p) const {
  double val = p_eval(*this, p);
  if (u_weight) val /= p(1) * p(1);
  return val;
}

double PpWaveChart::dF(int i, const VectorXd& p) const {
  if (!u_weight) return p_d(*this, i, p);
  const double u = p(1);
  double val = p_d(*this, i, p) / (u * u);
  if (i == 1) val -= 2.0 * p_eval(*this, p) / (u * u * u);
  return val;
}

double PpWaveChart::d2F(int i, int j, const VectorXd& p) const {
  if (!u_weight) return p_dd(*this, i, j, p);
  const double u = p(1);
  double val = p_dd(*this, i, j, p) / (u * u);
  if (i == 1) val -= 2.0 * p_d(*this, j, p) / (u * u * u);
  if (j == 1) val -= 2.0 * p_d(*this, i, p) / (u * u * u);
  if (i == 1 && j == 1) val += 6.0 * p_eval(*this, p) / (u * u * u * u);
  return val;
}

bool PpWaveChart::in_domain(const VectorXd& p) const {
  switch (domain) {
    case PlaneDomain::FullPlane:
      return true;
    case PlaneDomain::PuncturedPlane:
      return p.head(2).norm() > 1e-12;
    case PlaneDomain::HalfPlaneU:
      return p(1) > 0.0;
  }
  return false;
}

MatrixXd PpWaveChart::screen_hessian(const VectorXd& p) const {
  MatrixXd H(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) H(i, j) = d2F(2 + i, 2 + j, p);
  }
  return H;
}

MatrixXd PpWaveChart::frame(const VectorXd& p) const {
  MatrixXd E = MatrixXd::Zero(n + 2, n + 2);
  E(0, 0) = 1.0;                              // d_v
  for (int i = 0; i < n; ++i) E(2 + i, 1 + i) = 1.0;  // d_i
  E(0, n + 1) = -F(p);                        // d_u - F d_v
  E(1, n + 1) = 1.0;
  return E;
}

MatrixXd PpWaveChart::frame_inverse(const VectorXd& p) const {
  // Coefficients of (c_v, c_u, c_x) in the frame: the d_u component is c_u,
  // the screen components are c_x, the d_v component is c_v + F c_u.
  MatrixXd Ei = MatrixXd::Zero(n + 2, n + 2);
  Ei(0, 0) = 1.0;
  Ei(0, 1) = F(p);
  for (int i = 0; i < n; ++i) Ei(1 + i, 2 + i) = 1.0;
  Ei(n + 1, 1) = 1.0;
  return Ei;
}

PpWaveChart make_ppwave_chart(PpWaveChart chart) {
  if (chart.n < 1) throw std::invalid_argument("chart: screen dimension must be >= 1");
  if (chart.f.nvars() != chart.n + 2) {
    throw std::invalid_argument("chart: f must be a polynomial in (v, u, x^1..x^n)");
  }
  for (const auto& term : chart.trig) {
    if (term.freq.size() != chart.n) {
      throw std::invalid_argument("chart: cosine term frequency arity mismatch");
    }
  }
  chart.dv_zero = (chart.f.degree(0) == 0);
  if (chart.u_weight && chart.domain != PlaneDomain::HalfPlaneU) {
    throw std::invalid_argument("chart: the u^-2 weight requires the half-plane domain");
  }
  if (chart.hessian_point) {
    const VectorXd& hp = *chart.hessian_point;
    if (hp.size() != chart.n + 2 || !chart.in_domain(hp)) {
      throw std::invalid_argument("chart: Hessian certificate point outside the domain");
    }
    if (std::abs(chart.screen_hessian(hp).determinant()) < 1e-12) {
      throw std::invalid_argument("chart: Hessian certificate point is degenerate");
    }
  }
  return chart;
}

ChristoffelTable christoffel(const PpWaveChart& chart, const VectorXd& p) {
  if (!chart.in_domain(p)) throw std::invalid_argument("christoffel: point outside the domain");
  ChristoffelTable table;
  const int n = chart.n;
  table.dv_dv_coeff = chart.dF(0, p);
  table.screen_to_dv.resize(n);
  for (int i = 0; i < n; ++i) table.screen_to_dv(i) = chart.dF(2 + i, p);
  table.uu_components = VectorXd::Zero(n + 2);
  const double Fv = chart.dF(0, p);
  table.uu_components(0) = chart.dF(1, p) + 2.0 * chart.F(p) * Fv;
  table.uu_components(1) = -Fv;
  for (int i = 0; i < n; ++i) table.uu_components(2 + i) = -chart.dF(2 + i, p);
  return table;
}

MatrixXd christoffel_contraction(const PpWaveChart& chart, const VectorXd& p, const VectorXd& Y) {
  const int n = chart.n;
  const double Fv = chart.dF(0, p);
  const double Fu = chart.dF(1, p);
  MatrixXd A = MatrixXd::Zero(n + 2, n + 2);
  const double Yu = Y(1);
  A(0, 0) = Fv * Yu;
  A(0, 1) = Fv * Y(0) + (Fu + 2.0 * chart.F(p) * Fv) * Yu;
  A(1, 1) = -Fv * Yu;
  for (int i = 0; i < n; ++i) {
    const double Fi = chart.dF(2 + i, p);
    A(0, 1) += Fi * Y(2 + i);
    A(0, 2 + i) = Fi * Yu;
    A(2 + i, 1) = -Fi * Yu;
  }
  return A;
}

MatrixXd christoffel_contraction_derivative(const PpWaveChart& chart, const VectorXd& p,
                                            int s, const VectorXd& Y) {
  const int n = chart.n;
  const double Fvs = chart.d2F(0, s, p);
  const double Fus = chart.d2F(1, s, p);
  const double Fv = chart.dF(0, p);
  const double Fs = chart.dF(s, p);
  MatrixXd A = MatrixXd::Zero(n + 2, n + 2);
  const double Yu = Y(1);
  A(0, 0) = Fvs * Yu;
  A(0, 1) = Fvs * Y(0) + (Fus + 2.0 * Fs * Fv + 2.0 * chart.F(p) * Fvs) * Yu;
  A(1, 1) = -Fvs * Yu;
  for (int i = 0; i < n; ++i) {
    const double Fis = chart.d2F(2 + i, s, p);
    A(0, 1) += Fis * Y(2 + i);
    A(0, 2 + i) = Fis * Yu;
    A(2 + i, 1) = -Fis * Yu;
  }
  return A;
}

MatrixXd curvature(const PpWaveChart& chart, const VectorXd& p, const VectorXd& X,
                   const VectorXd& Y) {
  if (!chart.in_domain(p)) throw std::invalid_argument("curvature: point outside the domain");
  const int n = chart.n;
  MatrixXd R = MatrixXd::Zero(n + 2, n + 2);
  for (int s = 0; s < n + 2; ++s) {
    if (X(s) != 0.0) R += X(s) * christoffel_contraction_derivative(chart, p, s, Y);
    if (Y(s) != 0.0) R -= Y(s) * christoffel_contraction_derivative(chart, p, s, X);
  }
  MatrixXd AX = christoffel_contraction(chart, p, X);
  MatrixXd AY = christoffel_contraction(chart, p, Y);
  R += AX * AY - AY * AX;
  return R;
}

VectorXd PathSegment::position(double t) const {
  if (kind == Kind::Polynomial) {
    VectorXd p(static_cast<Eigen::Index>(coords.size()));
    VectorXd tv(1);
    tv(0) = t;
    for (size_t i = 0; i < coords.size(); ++i) p(static_cast<Eigen::Index>(i)) = coords[i].eval(tv);
    return p;
  }
  VectorXd p = arc_center;
  const double ang = arc_angle0 + t * (arc_angle1 - arc_angle0);
  p(arc_i) += arc_radius * std::cos(ang);
  p(arc_j) += arc_radius * std::sin(ang);
  return p;
}

VectorXd PathSegment::velocity(double t) const {
  if (kind == Kind::Polynomial) {
    VectorXd v(static_cast<Eigen::Index>(coords.size()));
    VectorXd tv(1);
    tv(0) = t;
    for (size_t i = 0; i < coords.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = coords[i].derivative(0).eval(tv);
    }
    return v;
  }
  VectorXd v = VectorXd::Zero(arc_center.size());
  const double dang = arc_angle1 - arc_angle0;
  const double ang = arc_angle0 + t * dang;
  v(arc_i) = -arc_radius * std::sin(ang) * dang;
  v(arc_j) = arc_radius * std::cos(ang) * dang;
  return v;
}

PathSpec straight_path(const VectorXd& from, const VectorXd& to) {
  PathSegment seg;
  seg.kind = PathSegment::Kind::Polynomial;
  for (int i = 0; i < from.size(); ++i) {
    Polynomial c(1);
    c.add_term({0}, from(i));
    c.add_term({1}, to(i) - from(i));
    seg.coords.push_back(c);
  }
  return PathSpec{{seg}};
}

PathSpec polygon_path(const std::vector<VectorXd>& waypoints) {
  if (waypoints.size() < 2) throw std::invalid_argument("polygon_path: need at least two points");
  PathSpec path;
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    path.segments.push_back(straight_path(waypoints[i], waypoints[i + 1]).segments.front());
  }
  return path;
}

PathSpec rectangle_loop(const VectorXd& base, int coord_a, int coord_b, double len_a,
                        double len_b) {
  VectorXd p1 = base, p2 = base, p3 = base;
  p1(coord_a) += len_a;
  p2(coord_a) += len_a;
  p2(coord_b) += len_b;
  p3(coord_b) += len_b;
  return polygon_path({base, p1, p2, p3, base});
}

void validate_path(const PpWaveChart& chart, const PathSpec& path) {
  if (path.segments.empty()) throw std::invalid_argument("path: empty");
  for (size_t s = 0; s < path.segments.size(); ++s) {
    const auto& seg = path.segments[s];
    for (int i = 0; i <= 32; ++i) {
      VectorXd p = seg.position(i / 32.0);
      if (p.size() != chart.n + 2) throw std::invalid_argument("path: arity mismatch");
      if (!chart.in_domain(p)) throw std::invalid_argument("path: exits the domain");
    }
    if (s > 0) {
      VectorXd prev = path.segments[s - 1].position(1.0);
      if ((seg.position(0.0) - prev).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("path: discontinuous at a junction");
      }
    }
  }
}

MatrixXd parallel_transport(const PpWaveChart& chart, const PathSpec& path, double tol,
                            const OdeOptions& ode) {
  validate_path(chart, path);
  const int dim = chart.n + 2;
  MatrixXd Y = MatrixXd::Identity(dim, dim);
  for (const auto& seg : path.segments) {
    auto A = [&](double t) {
      return MatrixXd(-christoffel_contraction(chart, seg.position(t), seg.velocity(t)));
    };
    Y = integrate_linear(A, Y, 0.0, 1.0, ode).value;
  }
  MatrixXd T = chart.frame_inverse(path.end()) * Y * chart.frame(path.start());
  if (!is_lorentz(T, tol)) {
    throw std::runtime_error("integration failure: transport is not Lorentz within tolerance");
  }
  return T;
}

std::vector<ASample> default_sample_spec(const PpWaveChart& chart, const VectorXd& base) {
  const int n = chart.n;
  std::vector<VectorXd> endpoints = {base};
  if (chart.hessian_point) endpoints.push_back(*chart.hessian_point);
  for (int c = 0; c < n + 2; ++c) {
    VectorXd p = base;
    p(c) += 0.3;
    if (chart.in_domain(p)) endpoints.push_back(p);
  }
  std::vector<ASample> samples;
  for (const auto& q : endpoints) {
    PathSpec path = straight_path(base, q);
    bool ok = true;
    try {
      validate_path(chart, path);
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    if (!ok) continue;
    auto unit = [&](int c) { return VectorXd(VectorXd::Unit(n + 2, c)); };
    for (int i = 0; i < n; ++i) samples.push_back({path, unit(1), unit(2 + i)});
    samples.push_back({path, unit(1), unit(0)});
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) samples.push_back({path, unit(2 + i), unit(2 + j)});
    }
  }
  return samples;
}

std::vector<ParabolicAlgebraElement> ambrose_singer_sample(const PpWaveChart& chart,
                                                           const VectorXd& base,
                                                           const std::vector<ASample>& samples,
                                                           double tol) {
  std::vector<VectorXd> coords;
  const int n = chart.n;
  for (const auto& sample : samples) {
    if ((sample.path.start() - base).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("ambrose_singer_sample: path does not start at the base point");
    }
    MatrixXd T = parallel_transport(chart, sample.path, 1e-7);
    VectorXd q = sample.path.end();
    MatrixXd R_frame = chart.frame_inverse(q) * curvature(chart, q, sample.X, sample.Y) *
                       chart.frame(q);
    MatrixXd conj = T.inverse() * R_frame * T;
    if (conj.cwiseAbs().maxCoeff() < tol) continue;
    ParabolicAlgebraElement elem = decompose_algebra(conj, 1e-6);
    coords.push_back(algebra_coordinates(elem));
  }
  MatrixXd span = orthonormal_span(coords, tol);
  std::vector<ParabolicAlgebraElement> out;
  for (int j = 0; j < span.cols(); ++j) {
    out.push_back(algebra_from_coordinates(span.col(j), n));
  }
  return out;
}

bool rational_approx(double x, long max_den, double tol, long* p_out, long* q_out) {
  long p0 = 1, q0 = 0;  // convergent p_{-1}/q_{-1}
  long p1 = static_cast<long>(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(p1) / q1) < tol) {
      *p_out = p1;
      *q_out = q1;
      return true;
    }
    if (frac < 1e-15) break;
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (std::abs(x - static_cast<double>(p1) / q1) < tol && q1 <= max_den) {
    *p_out = p1;
    *q_out = q1;
    return true;
  }
  return false;
}

CahenWallachSpec make_cahen_wallach_spec(const VectorXd& lambda) {
  CahenWallachSpec spec;
  spec.lambda = lambda;
  const int n = static_cast<int>(lambda.size());
  if (n < 1) throw std::invalid_argument("cahen-wallach: empty profile");
  for (int i = 0; i < n; ++i) {
    if (lambda(i) == 0.0) throw std::invalid_argument("cahen-wallach: zero entry in lambda");
  }
  if (lambda.maxCoeff() < 0.0) {
    VectorXd k(n);
    for (int i = 0; i < n; ++i) k(i) = std::sqrt(-lambda(i));
    std::vector<long> p(n), q(n);
    bool rational = true;
    for (int i = 0; i < n; ++i) {
      // Modest denominator bound: convergents of any double eventually match it
      // exactly, so a large bound would classify every ratio as rational.
      if (!rational_approx(k(i) / k(0), 1000, 1e-9, &p[i], &q[i])) rational = false;
    }
    if (rational) {
      long lcm = 1;
      for (int i = 0; i < n; ++i) lcm = std::lcm(lcm, q[i]);
      std::vector<long> m(n);
      long g = 0;
      for (int i = 0; i < n; ++i) {
        m[i] = p[i] * (lcm / q[i]);
        g = std::gcd(g, m[i]);
      }
      spec.reflection_case = true;
      spec.k = k;
      spec.beta = static_cast<double>(lcm) / (k(0) * static_cast<double>(g));
    }
  }
  return spec;
}

PpWaveChart build_cahen_wallach(const CahenWallachSpec& spec) {
  const int n = static_cast<int>(spec.lambda.size());
  PpWaveChart chart;
  chart.n = n;
  chart.domain = PlaneDomain::FullPlane;
  chart.f = Polynomial(n + 2);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n + 2, 0);
    e[2 + i] = 2;
    chart.f.add_term(e, 0.5 * spec.lambda(i));
  }
  chart.hessian_point = VectorXd::Zero(n + 2);
  return make_ppwave_chart(chart);
}

}  // namespace lorhol
