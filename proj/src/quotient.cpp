#include "lorhol/quotient.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "lorhol/linalg.hpp"

namespace lorhol {

namespace {

// Substitution polynomials for u -> cu * u + du and x -> R x + r, acting on
// tau in (v, u, x) coordinates.
std::vector<Polynomial> affine_substitution(int n, double cu, double du, const MatrixXd& R,
                                            const VectorXd& r) {
  const int dim = n + 2;
  std::vector<Polynomial> subs;
  subs.push_back(Polynomial::variable(dim, 0));
  Polynomial u = Polynomial::variable(dim, 1) * cu;
  u.add_term(std::vector<int>(dim, 0), du);
  subs.push_back(u);
  for (int i = 0; i < n; ++i) {
    Polynomial xi(dim);
    for (int j = 0; j < n; ++j) {
      if (R(i, j) != 0.0) xi = xi + Polynomial::variable(dim, 2 + j) * R(i, j);
    }
    xi.add_term(std::vector<int>(dim, 0), r(i));
    subs.push_back(xi);
  }
  return subs;
}

MatrixXd chart_metric(const PpWaveChart& chart, const VectorXd& p) {
  const int d = chart.n + 2;
  MatrixXd g = MatrixXd::Zero(d, d);
  g(0, 1) = 1.0;
  g(1, 0) = 1.0;
  g(1, 1) = 2.0 * chart.F(p);
  for (int i = 0; i < chart.n; ++i) g(2 + i, 2 + i) = 1.0;
  return g;
}

// Deterministic interior sample points for the isometry check.
std::vector<VectorXd> sample_points(const PpWaveChart& chart) {
  std::vector<double> us;
  switch (chart.domain) {
    case PlaneDomain::HalfPlaneU:
      us = {0.5, 1.0, 2.0};
      break;
    default:
      us = {-1.1, 0.4, 1.7};
      break;
  }
  std::vector<VectorXd> points;
  for (double v : {0.0, 0.3}) {
    for (double u : us) {
      for (int shift = 0; shift < 2; ++shift) {
        VectorXd p(chart.n + 2);
        p(0) = v;
        p(1) = u;
        for (int i = 0; i < chart.n; ++i) p(2 + i) = 0.15 + 0.2 * (i + 1) + 0.37 * shift;
        if (chart.in_domain(p)) points.push_back(p);
      }
    }
  }
  return points;
}

}  // namespace

VectorXd DeckIsometry::apply(const VectorXd& p) const {
  VectorXd q(p.size());
  q(0) = a * p(0) + tau.eval(p);
  q(1) = p(1) / a + b;
  q.tail(n()) = O * p.tail(n()) + w;
  return q;
}

MatrixXd DeckIsometry::differential(const VectorXd& p) const {
  const int dim = n() + 2;
  MatrixXd D = MatrixXd::Zero(dim, dim);
  D(0, 0) = a;
  D(0, 1) = tau.derivative(1).eval(p);
  for (int i = 0; i < n(); ++i) D(0, 2 + i) = tau.derivative(2 + i).eval(p);
  D(1, 1) = 1.0 / a;
  D.block(2, 2, n(), n()) = O;
  return D;
}

DeckIsometry make_deck_isometry(DeckIsometry candidate) {
  const int n = candidate.n();
  if (candidate.a == 0.0) throw std::invalid_argument("deck isometry: scale must be nonzero");
  if (candidate.O.rows() != n || candidate.O.cols() != n) {
    throw std::invalid_argument("deck isometry: orthogonal block size mismatch");
  }
  if (max_abs_diff(candidate.O.transpose() * candidate.O, MatrixXd::Identity(n, n)) > 1e-9) {
    throw std::invalid_argument("deck isometry: base map is not orthogonal");
  }
  if (candidate.tau.nvars() != n + 2) {
    candidate.tau = Polynomial(n + 2);
  }
  if (candidate.tau.degree(0) > 0) {
    throw std::invalid_argument("deck isometry: tau must not depend on v");
  }
  return candidate;
}

DeckIsometry deck_compose(const DeckIsometry& s1, const DeckIsometry& s2) {
  const int n = s1.n();
  if (s2.n() != n) throw std::invalid_argument("deck compose: dimension mismatch");
  DeckIsometry out;
  out.kind = DeckIsometry::Kind::Custom;
  out.a = s1.a * s2.a;
  out.b = s1.b + s2.b / s1.a;
  out.O = s1.O * s2.O;
  out.w = s1.O * s2.w + s1.w;
  auto subs = affine_substitution(n, 1.0 / s2.a, s2.b, s2.O, s2.w);
  out.tau = s2.tau * s1.a + s1.tau.substitute(subs);
  return make_deck_isometry(out);
}

DeckIsometry deck_inverse(const DeckIsometry& s) {
  const int n = s.n();
  DeckIsometry out;
  out.kind = s.kind;
  out.a = 1.0 / s.a;
  out.b = -s.a * s.b;
  out.O = s.O.transpose();
  out.w = -(s.O.transpose() * s.w);
  auto subs = affine_substitution(n, s.a, -s.a * s.b, out.O, out.w);
  out.tau = s.tau.substitute(subs) * (-1.0 / s.a);
  return make_deck_isometry(out);
}

DeckIsometry deck_translation(int n, double alpha) {
  DeckIsometry d;
  d.kind = DeckIsometry::Kind::Translation;
  d.O = MatrixXd::Identity(n, n);
  d.w = VectorXd::Zero(n);
  d.tau = Polynomial::constant(n + 2, alpha);
  return make_deck_isometry(d);
}

DeckIsometry deck_sign_flip(int n, const MatrixXd& O, const VectorXd& w) {
  DeckIsometry d;
  d.kind = DeckIsometry::Kind::SignFlip;
  d.a = -1.0;
  d.O = O;
  d.w = w;
  d.tau = Polynomial(n + 2);
  return make_deck_isometry(d);
}

DeckIsometry deck_boost(int n, double lambda, const VectorXd& w) {
  DeckIsometry d;
  d.kind = DeckIsometry::Kind::Boost;
  d.a = std::exp(lambda);
  d.O = MatrixXd::Identity(n, n);
  d.w = w;
  d.tau = Polynomial(n + 2);
  return make_deck_isometry(d);
}

DeckIsometry deck_cw_centralizer(const CahenWallachSpec& spec, int m) {
  const int n = static_cast<int>(spec.lambda.size());
  if (m == 0) return deck_translation(n, 0.0);
  if (!spec.reflection_case) {
    throw std::domain_error(
        "centralizer reflection unavailable: profile outside the reflection case");
  }
  DeckIsometry d;
  d.kind = DeckIsometry::Kind::CwCentralizer;
  d.b = m * spec.beta * M_PI;
  d.O = MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const long e = std::llround(static_cast<double>(m) * spec.beta * spec.k(i));
    d.O(i, i) = (e % 2 == 0) ? 1.0 : -1.0;
  }
  d.w = VectorXd::Zero(n);
  d.tau = Polynomial(n + 2);
  return make_deck_isometry(d);
}

DeckIsometry validate_isometry(const PpWaveChart& chart, const DeckIsometry& candidate,
                               double tol) {
  DeckIsometry sigma = make_deck_isometry(candidate);
  if (sigma.n() != chart.n) throw std::invalid_argument("validate_isometry: dimension mismatch");
  for (const VectorXd& p : sample_points(chart)) {
    VectorXd q = sigma.apply(p);
    std::ostringstream at;
    at << "(" << p.transpose() << ")";
    if (!chart.in_domain(q)) {
      throw std::domain_error("not an isometry: image leaves the domain at " + at.str());
    }
    MatrixXd D = sigma.differential(p);
    MatrixXd pullback = D.transpose() * chart_metric(chart, q) * D;
    if (max_abs_diff(pullback, chart_metric(chart, p)) > tol) {
      throw std::domain_error("not an isometry: metric pullback mismatch at " + at.str());
    }
  }
  return sigma;
}

DiscontinuityVerdict check_properly_discontinuous(const DeckFamily& family,
                                                  long max_denominator) {
  DiscontinuityVerdict v;
  switch (family.kind) {
    case DeckFamily::Kind::Trivial:
    case DeckFamily::Kind::SignFlipPunctured:
      v.pd1 = VerdictStatus::Pass;
      v.pd2 = VerdictStatus::Pass;
      return v;
    case DeckFamily::Kind::LatticeTranslations: {
      Eigen::JacobiSVD<MatrixXd> svd(family.lattice);
      if (family.lattice.cols() == 0 ||
          svd.singularValues()(svd.singularValues().size() - 1) < 1e-12) {
        throw std::invalid_argument("lattice generators must be linearly independent");
      }
      v.pd1 = VerdictStatus::Pass;
      v.pd2 = VerdictStatus::Pass;
      return v;
    }
    case DeckFamily::Kind::BoostPunctured: {
      v.pd1 = VerdictStatus::Pass;
      v.pd2 = VerdictStatus::Fail;
      v.witness = "orbits of the axis points (1,0) and (0,1) accumulate at the origin";
      v.witness_data = VectorXd(4);
      v.witness_data << 1.0, 0.0, 0.0, 1.0;
      return v;
    }
    case DeckFamily::Kind::BoostsHalfPlane: {
      const auto& l = family.lambdas;
      for (int i = 0; i < l.size(); ++i) {
        if (l(i) == 0.0) throw std::invalid_argument("boost exponents must be nonzero");
      }
      v.pd2 = VerdictStatus::Pass;
      v.pd1 = VerdictStatus::Pass;
      for (int i = 1; i < l.size(); ++i) {
        long p = 0, q = 0;
        if (rational_approx(l(i) / l(0), max_denominator, 1e-9, &p, &q)) {
          v.rationality_caveat = true;
          continue;
        }
        // Irrational ratio: convergents give integer pairs with
        // |k l_0 + m l_i| arbitrarily small.
        double x = l(i) / l(0);
        double a0 = x;
        long h0 = 1, h1 = static_cast<long>(std::floor(a0));
        long k0 = 0, k1 = 1;
        double frac = a0 - std::floor(a0);
        for (int step = 0; step < 64; ++step) {
          const double err = std::abs(k1 * l(i) - h1 * l(0));
          if (err < 1e-3 && err > 0.0) {
            v.pd1 = VerdictStatus::Fail;
            v.witness = "integer combination of boost exponents below threshold";
            v.witness_data = VectorXd(3);
            v.witness_data << static_cast<double>(-h1), static_cast<double>(k1), err;
            return v;
          }
          if (frac < 1e-15) break;
          const double next = 1.0 / frac;
          const long digit = static_cast<long>(std::floor(next));
          frac = next - std::floor(next);
          const long h2 = digit * h1 + h0;
          const long k2 = digit * k1 + k0;
          h0 = h1;
          h1 = h2;
          k0 = k1;
          k1 = k2;
        }
        v.pd1 = VerdictStatus::Unknown;
        v.witness = "could not certify the boost exponent lattice";
        return v;
      }
      return v;
    }
    case DeckFamily::Kind::Unsupported:
      break;
  }
  v.pd1 = VerdictStatus::Unknown;
  v.pd2 = VerdictStatus::Unknown;
  v.witness = "family outside the supported parametric kinds";
  return v;
}

QuotientVerdict check_quotient_type(const QuotientTypeDescriptor& descriptor) {
  QuotientVerdict out;
  out.gamma2_verdict = check_properly_discontinuous(descriptor.gamma2);
  const auto& g2 = out.gamma2_verdict;
  if (g2.pd1 == VerdictStatus::Fail || g2.pd2 == VerdictStatus::Fail) {
    out.status = VerdictStatus::Fail;
    out.reason = "second-factor projection is not properly discontinuous: " + g2.witness;
    return out;
  }
  if (g2.pd1 == VerdictStatus::Unknown || g2.pd2 == VerdictStatus::Unknown) {
    out.status = VerdictStatus::Unknown;
    out.reason = "second-factor projection undecided: " + g2.witness;
    return out;
  }
  if (!descriptor.identity_section_pd1) {
    out.status = VerdictStatus::Unknown;
    out.reason = "identity section not certified";
    return out;
  }
  if (!descriptor.sections_finite && !descriptor.sections_pd2) {
    out.status = VerdictStatus::Unknown;
    out.reason = "sections neither finite nor certified";
    return out;
  }
  out.status = VerdictStatus::Pass;
  out.properly_discontinuous = true;
  return out;
}

ParabolicElement deck_representative(const PpWaveChart& chart, const DeckIsometry& sigma) {
  if (!chart.dv_zero) {
    throw std::domain_error("deck representative requires a v-independent profile");
  }
  if (sigma.n() != chart.n) throw std::invalid_argument("deck representative: dimension mismatch");
  // Flat base: the base transport is the identity, and the inverse of the
  // base differential of sigma^{-1} is the orthogonal part of sigma itself.
  return make_parabolic(sigma.a, sigma.O, VectorXd::Zero(chart.n));
}

ParabolicElement deck_representative_transport(const PpWaveChart& chart,
                                               const DeckIsometry& sigma, const VectorXd& base,
                                               const std::vector<VectorXd>& waypoints,
                                               double tol) {
  if (!chart.dv_zero) {
    throw std::domain_error("deck representative requires a v-independent profile");
  }
  const VectorXd endpoint = deck_inverse(sigma).apply(base);
  std::vector<VectorXd> pts = {base};
  pts.insert(pts.end(), waypoints.begin(), waypoints.end());
  pts.push_back(endpoint);
  MatrixXd T = parallel_transport(chart, polygon_path(pts), tol);
  MatrixXd dsigma_frames =
      chart.frame_inverse(base) * sigma.differential(endpoint) * chart.frame(endpoint);
  return decompose_parabolic(dsigma_frames * T, tol * 10.0);
}

HolonomyDescription quotient_holonomy(const PpWaveChart& chart,
                                      const std::vector<DeckIsometry>& generators,
                                      const VectorXd& base, const QuotientVerdict& verdict,
                                      int word_bound) {
  if (verdict.status == VerdictStatus::Fail) {
    throw std::domain_error("quotient rejected: " + verdict.reason);
  }
  HolonomyDescription out;
  out.conditional = (verdict.status == VerdictStatus::Unknown);

  std::vector<MatrixXd> rep_matrices;
  for (const auto& sigma : generators) {
    ParabolicElement rep = deck_representative(chart, sigma);
    rep_matrices.push_back(rep.matrix());
    out.discrete_generators.push_back(std::move(rep));
  }
  if (rep_matrices.empty()) {
    rep_matrices.push_back(MatrixXd::Identity(chart.n + 2, chart.n + 2));
  }
  out.sample = group_closure(rep_matrices, word_bound);
  out.discrete = discrete_part(out.sample);

  out.connected_span = ambrose_singer_sample(chart, base, default_sample_spec(chart, base));
  if (!out.connected_span.empty()) {
    const int m = chart.n * (chart.n - 1) / 2;
    MatrixXd top(1 + m, static_cast<int>(out.connected_span.size()));
    for (size_t j = 0; j < out.connected_span.size(); ++j) {
      VectorXd c = algebra_coordinates(out.connected_span[j]);
      top.col(static_cast<int>(j)) = c.head(1 + m);
      if (std::abs(c(0)) > 1e-8) out.has_scaling = true;
    }
    out.translation_rank = static_cast<int>(nullspace(top, 1e-8).cols());
    try {
      out.type = classify_type(out.connected_span).type;
    } catch (const std::domain_error&) {
      out.type = 0;
    }

    // Each discrete representative must normalize the sampled connected part.
    std::vector<MatrixXd> h0;
    for (const auto& e : out.connected_span) h0.push_back(MatrixXd(e.matrix().exp()));
    for (const auto& rep : out.discrete_generators) {
      NormalizerResult nr = normalizer_check(h0, rep.matrix());
      if (!nr.ok) {
        throw std::domain_error("discrete generator fails to normalize the connected part: " +
                                nr.reason);
      }
    }
  }
  return out;
}

GroupSample flat_quotient_holonomy(const FlatAffineGroup& gamma, int word_bound) {
  if (gamma.linear.empty()) throw std::invalid_argument("flat quotient: no generators");
  return group_closure(gamma.linear, word_bound);
}

MatrixXd flat_a_theta(double theta) {
  MatrixXd D(2, 2);
  D << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  VectorXd x(2);
  x << -std::cos(theta), std::sin(theta);
  return make_parabolic(1.0, D, x).matrix();
}

HolonomyDescription cahen_wallach_full_holonomy(const CahenWallachSpec& spec, int m,
                                                double alpha) {
  if (m < 0) throw std::invalid_argument("power must be nonnegative");
  const int n = static_cast<int>(spec.lambda.size());
  if (m > 0 && !spec.reflection_case) {
    throw std::domain_error(
        "centralizer reflection unavailable: profile outside the reflection case");
  }
  (void)alpha;  // pure v-translations have the identity representative

  PpWaveChart chart = build_cahen_wallach(spec);
  VectorXd base = VectorXd::Zero(n + 2);

  HolonomyDescription out;
  std::vector<MatrixXd> gens;
  if (m % 2 == 1) {
    DeckIsometry phi = deck_cw_centralizer(spec, m);
    out.discrete_generators.push_back(deck_representative(chart, phi));
    gens.push_back(out.discrete_generators.back().matrix());
  } else {
    gens.push_back(MatrixXd::Identity(n + 2, n + 2));
  }
  out.sample = group_closure(gens, 4);
  out.discrete = discrete_part(out.sample);
  out.connected_span = ambrose_singer_sample(chart, base, default_sample_spec(chart, base));
  out.translation_rank = static_cast<int>(out.connected_span.size());
  try {
    out.type = classify_type(out.connected_span).type;
  } catch (const std::domain_error&) {
    out.type = 0;
  }
  return out;
}

}  // namespace lorhol
