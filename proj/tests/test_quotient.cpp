#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lorhol/quotient.hpp"

using namespace lorhol;

namespace {

// Lattice-periodic screen profile f = cos(2 pi x1) + ... + cos(2 pi xn) with
// a nondegenerate Hessian at the origin.
PpWaveChart trig_chart(int n, PlaneDomain domain, bool u_weight) {
  PpWaveChart c;
  c.n = n;
  c.f = Polynomial(n + 2);
  for (int i = 0; i < n; ++i) {
    CosTerm t;
    t.amp = 1.0;
    t.freq = VectorXd::Zero(n);
    t.freq(i) = 2.0 * M_PI;
    c.trig.push_back(t);
  }
  c.domain = domain;
  c.u_weight = u_weight;
  VectorXd hess = VectorXd::Zero(n + 2);
  hess(1) = (domain == PlaneDomain::FullPlane) ? 0.0 : 1.0;
  c.hessian_point = hess;
  return make_ppwave_chart(c);
}

DeckIsometry sample_deck(int n) {
  DeckIsometry d;
  d.a = 2.0;
  d.b = 0.5;
  MatrixXd O = MatrixXd::Identity(n, n);
  O(0, 0) = 0.0;
  O(0, 1) = -1.0;
  O(1, 0) = 1.0;
  O(1, 1) = 0.0;
  d.O = O;
  d.w = VectorXd::LinSpaced(n, 0.3, 0.3 + 0.2 * (n - 1));
  d.tau = Polynomial(n + 2);
  d.tau.add_term({0, 2, 0, 0}, 0.7);   // 0.7 u^2
  d.tau.add_term({0, 1, 1, 0}, -0.4);  // -0.4 u x1
  return make_deck_isometry(d);
}

}  // namespace

TEST_CASE("deck isometry normal form") {
  const int n = 2;
  DeckIsometry d = sample_deck(n);
  VectorXd p(4);
  p << 0.3, -0.8, 1.1, -0.2;

  SUBCASE("inverse undoes the map") {
    DeckIsometry inv = deck_inverse(d);
    CHECK((inv.apply(d.apply(p)) - p).norm() < 1e-12);
    CHECK((d.apply(inv.apply(p)) - p).norm() < 1e-12);
  }
  SUBCASE("composition matches pointwise composition") {
    DeckIsometry e = deck_boost(n, 0.3, VectorXd::Unit(n, 0));
    DeckIsometry de = deck_compose(d, e);
    CHECK((de.apply(p) - d.apply(e.apply(p))).norm() < 1e-12);
    DeckIsometry ed = deck_compose(e, d);
    CHECK((ed.apply(p) - e.apply(d.apply(p))).norm() < 1e-12);
  }
  SUBCASE("differential matches finite differences") {
    const double h = 1e-6;
    MatrixXd D = d.differential(p);
    for (int j = 0; j < 4; ++j) {
      VectorXd pp = p, pm = p;
      pp(j) += h;
      pm(j) -= h;
      VectorXd col = (d.apply(pp) - d.apply(pm)) / (2.0 * h);
      CHECK((D.col(j) - col).norm() < 1e-6);
    }
  }
  SUBCASE("v-dependent tau rejected") {
    DeckIsometry bad = d;
    bad.tau.add_term({1, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(make_deck_isometry(bad), std::invalid_argument);
  }
  SUBCASE("non-orthogonal base map rejected") {
    DeckIsometry bad = d;
    bad.O *= 2.0;
    CHECK_THROWS_AS(make_deck_isometry(bad), std::invalid_argument);
  }
}

TEST_CASE("validate_isometry") {
  SUBCASE("identity on any chart") {
    PpWaveChart c = trig_chart(2, PlaneDomain::FullPlane, false);
    DeckIsometry id = deck_translation(2, 0.0);
    DeckIsometry v = validate_isometry(c, id);
    CHECK(v.a == 1.0);
    CHECK(v.b == 0.0);
  }
  SUBCASE("sign flip on the punctured plane") {
    PpWaveChart c = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    DeckIsometry flip = deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Zero(2));
    DeckIsometry v = validate_isometry(c, flip);
    CHECK(v.a == -1.0);
  }
  SUBCASE("boost with a lattice shift on the weighted half-plane chart") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    DeckIsometry psi = deck_boost(2, 0.7, VectorXd::Unit(2, 0));
    CHECK_NOTHROW(validate_isometry(c, psi));
  }
  SUBCASE("boost on the unweighted chart is not an isometry") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, false);
    DeckIsometry psi = deck_boost(2, 0.7, VectorXd::Unit(2, 0));
    CHECK_THROWS_WITH_AS(validate_isometry(c, psi), doctest::Contains("not an isometry"),
                         std::domain_error);
  }
  SUBCASE("non-lattice shift breaks periodic invariance") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    DeckIsometry psi = deck_boost(2, 0.7, VectorXd::Constant(2, 0.37));
    CHECK_THROWS_AS(validate_isometry(c, psi), std::domain_error);
  }
}

TEST_CASE("proper discontinuity verdicts") {
  SUBCASE("lattice translations pass") {
    DeckFamily fam;
    fam.kind = DeckFamily::Kind::LatticeTranslations;
    fam.lattice = MatrixXd::Identity(2, 2);
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Pass);
    CHECK(v.pd2 == VerdictStatus::Pass);
  }
  SUBCASE("single boost on the punctured plane fails the separation axiom") {
    DeckFamily fam;
    fam.kind = DeckFamily::Kind::BoostPunctured;
    fam.lambdas = VectorXd::Constant(1, 0.5);
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Pass);
    CHECK(v.pd2 == VerdictStatus::Fail);
    REQUIRE(v.witness_data.size() == 4);
    CHECK(v.witness_data(0) == 1.0);
    CHECK(v.witness_data(3) == 1.0);
  }
  SUBCASE("irrational boost pair fails with an explicit small combination") {
    DeckFamily fam;
    fam.kind = DeckFamily::Kind::BoostsHalfPlane;
    fam.lambdas = VectorXd(2);
    fam.lambdas << 1.0, std::sqrt(2.0);
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Fail);
    REQUIRE(v.witness_data.size() == 3);
    const double k = v.witness_data(0), l = v.witness_data(1);
    const double combo = std::abs(k * 1.0 + l * std::sqrt(2.0));
    CHECK(combo < 1e-3);
    CHECK(combo > 0.0);
    CHECK(combo == doctest::Approx(v.witness_data(2)));
  }
  SUBCASE("single boost on the half plane passes") {
    DeckFamily fam;
    fam.kind = DeckFamily::Kind::BoostsHalfPlane;
    fam.lambdas = VectorXd::Constant(1, 0.5);
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Pass);
    CHECK(v.pd2 == VerdictStatus::Pass);
  }
  SUBCASE("rational boost pair passes with a caveat") {
    DeckFamily fam;
    fam.kind = DeckFamily::Kind::BoostsHalfPlane;
    fam.lambdas = VectorXd(2);
    fam.lambdas << 0.9, 0.6;
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Pass);
    CHECK(v.rationality_caveat);
  }
  SUBCASE("unsupported family stays unknown") {
    DeckFamily fam;
    DiscontinuityVerdict v = check_properly_discontinuous(fam);
    CHECK(v.pd1 == VerdictStatus::Unknown);
    CHECK(v.pd2 == VerdictStatus::Unknown);
  }
}

TEST_CASE("quotient type verdicts") {
  QuotientTypeDescriptor d;
  d.gamma2.kind = DeckFamily::Kind::LatticeTranslations;
  d.gamma2.lattice = MatrixXd::Identity(2, 2);
  d.identity_section_pd1 = true;
  d.sections_finite = true;
  SUBCASE("lattice second factor with finite sections passes") {
    QuotientVerdict v = check_quotient_type(d);
    CHECK(v.status == VerdictStatus::Pass);
    CHECK(v.properly_discontinuous);
  }
  SUBCASE("failing second factor fails") {
    d.gamma2.kind = DeckFamily::Kind::BoostsHalfPlane;
    d.gamma2.lambdas = VectorXd(2);
    d.gamma2.lambdas << 1.0, std::sqrt(2.0);
    QuotientVerdict v = check_quotient_type(d);
    CHECK(v.status == VerdictStatus::Fail);
  }
  SUBCASE("uncertified sections stay unknown") {
    d.sections_finite = false;
    QuotientVerdict v = check_quotient_type(d);
    CHECK(v.status == VerdictStatus::Unknown);
  }
}

TEST_CASE("deck representatives in closed form") {
  PpWaveChart c = trig_chart(2, PlaneDomain::PuncturedPlane, false);
  SUBCASE("pure v-translation is trivial") {
    ParabolicElement r = deck_representative(c, deck_translation(2, 1.5));
    CHECK(max_abs_diff(r.matrix(), MatrixXd::Identity(4, 4)) < 1e-14);
  }
  SUBCASE("sign flip over a lattice translation") {
    DeckIsometry flip = deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0));
    ParabolicElement r = deck_representative(c, flip);
    CHECK(r.a == -1.0);
    CHECK(max_abs_diff(r.A, MatrixXd::Identity(2, 2)) < 1e-14);
    CHECK(r.x.norm() == 0.0);
  }
  SUBCASE("reflection power of the symmetric-space centralizer") {
    VectorXd lambda(2);
    lambda << -1.0, -4.0;
    CahenWallachSpec spec = make_cahen_wallach_spec(lambda);
    PpWaveChart cw = build_cahen_wallach(spec);
    ParabolicElement r = deck_representative(cw, deck_cw_centralizer(spec, 1));
    CHECK(r.a == 1.0);
    CHECK(r.A(0, 0) == -1.0);
    CHECK(r.A(1, 1) == 1.0);
  }
}

TEST_CASE("transport route agrees with the closed form modulo translations") {
  SUBCASE("sign flip on the punctured chart") {
    PpWaveChart c = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    DeckIsometry flip = deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0));
    VectorXd base(4);
    base << 0.0, 1.0, 0.1, 0.2;
    VectorXd mid(4);
    mid << 0.5, 0.0, 0.1, 0.2;  // route around the punctured origin
    ParabolicElement closed = deck_representative(c, flip);
    ParabolicElement num = deck_representative_transport(c, flip, base, {mid});
    CHECK(std::abs(num.a - closed.a) < 1e-6);
    CHECK(max_abs_diff(num.A, closed.A) < 1e-6);
  }
  SUBCASE("boost on the weighted half-plane chart") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    DeckIsometry psi = deck_boost(2, 0.4, VectorXd::Unit(2, 0));
    VectorXd base(4);
    base << 0.0, 1.0, 0.25, 0.0;
    ParabolicElement closed = deck_representative(c, psi);
    ParabolicElement num = deck_representative_transport(c, psi, base);
    CHECK(std::abs(num.a - closed.a) < 1e-6);
    CHECK(max_abs_diff(num.A, closed.A) < 1e-6);
  }
  SUBCASE("the (a, A) class is path independent") {
    PpWaveChart c = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    DeckIsometry flip = deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Zero(2));
    VectorXd base(4);
    base << 0.0, 1.0, 0.3, -0.1;
    VectorXd left(4), right(4);
    left << -0.6, 0.0, 0.3, -0.1;   // around the origin on one side
    right << 0.6, 0.0, 0.5, 0.4;    // and on the other, with a screen detour
    ParabolicElement r1 = deck_representative_transport(c, flip, base, {left});
    ParabolicElement r2 = deck_representative_transport(c, flip, base, {right});
    CHECK(std::abs(r1.a - r2.a) < 1e-6);
    CHECK(max_abs_diff(r1.A, r2.A) < 1e-6);
  }
  SUBCASE("representatives multiply like the isometries modulo translations") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    DeckIsometry p1 = deck_boost(2, 0.4, VectorXd::Unit(2, 0));
    DeckIsometry p2 = deck_boost(2, -0.3, VectorXd::Unit(2, 1));
    VectorXd base(4);
    base << 0.0, 1.0, 0.25, 0.25;
    ParabolicElement r1 = deck_representative_transport(c, p1, base);
    ParabolicElement r2 = deck_representative_transport(c, p2, base);
    ParabolicElement r12 = deck_representative_transport(c, deck_compose(p1, p2), base);
    ParabolicElement prod = parabolic_product(r1, r2);
    CHECK(std::abs(prod.a - r12.a) < 1e-6);
    CHECK(max_abs_diff(prod.A, r12.A) < 1e-6);
  }
}

TEST_CASE("quotient holonomy assembly") {
  QuotientVerdict pass;
  pass.status = VerdictStatus::Pass;
  pass.properly_discontinuous = true;

  SUBCASE("independent boost family") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    const double l1 = 0.3, l2 = 0.3 * std::sqrt(2.0);
    std::vector<DeckIsometry> gens = {deck_boost(2, l1, VectorXd::Unit(2, 0)),
                                      deck_boost(2, l2, VectorXd::Unit(2, 1))};
    VectorXd base(4);
    base << 0.0, 1.0, 0.0, 0.0;
    HolonomyDescription h = quotient_holonomy(c, gens, base, pass, 2);
    CHECK(!h.conditional);
    CHECK(h.translation_rank == 2);
    CHECK(!h.has_scaling);
    CHECK(h.type == 2);
    CHECK(h.discrete.classes.size() == 13);  // |k1| + |k2| <= 2 combinations
    for (const auto& cls : h.discrete.classes) {
      CHECK(max_abs_diff(cls.A, MatrixXd::Identity(2, 2)) < 1e-9);
      // log of the scale must be an integer combination of the exponents.
      bool matched = false;
      for (int k1 = -2; k1 <= 2 && !matched; ++k1) {
        for (int k2 = -2; k2 <= 2 && !matched; ++k2) {
          if (std::abs(std::log(std::abs(cls.a)) - (k1 * l1 + k2 * l2)) < 1e-9) matched = true;
        }
      }
      CHECK(matched);
    }
  }
  SUBCASE("coupled sign-flip family") {
    PpWaveChart c = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    std::vector<DeckIsometry> gens = {
        deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0))};
    VectorXd base(4);
    base << 0.0, 1.0, 0.0, 0.0;
    HolonomyDescription h = quotient_holonomy(c, gens, base, pass, 4);
    CHECK(h.discrete.classes.size() == 2);
    CHECK(h.sample.saturated);
    CHECK(h.translation_rank == 2);
  }
  SUBCASE("failed verdict is refused") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    QuotientVerdict fail;
    fail.status = VerdictStatus::Fail;
    fail.reason = "separation witness";
    std::vector<DeckIsometry> gens = {deck_boost(2, 0.3, VectorXd::Unit(2, 0))};
    CHECK_THROWS_WITH_AS(
        quotient_holonomy(c, gens, VectorXd::Zero(4), fail, 2),
        doctest::Contains("separation witness"), std::domain_error);
  }
  SUBCASE("unknown verdict marks the result conditional") {
    PpWaveChart c = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    QuotientVerdict unknown;
    unknown.status = VerdictStatus::Unknown;
    std::vector<DeckIsometry> gens = {deck_boost(2, 0.3, VectorXd::Unit(2, 0))};
    VectorXd base(4);
    base << 0.0, 1.0, 0.0, 0.0;
    HolonomyDescription h = quotient_holonomy(c, gens, base, unknown, 2);
    CHECK(h.conditional);
  }
}

TEST_CASE("flat quotients") {
  SUBCASE("screw matrix is parabolic with unit scale") {
    MatrixXd A = flat_a_theta(1.0);
    CHECK(is_lorentz(A));
    ParabolicElement p = decompose_parabolic(A);
    CHECK(p.a == doctest::Approx(1.0));
  }
  SUBCASE("quarter turn has order four") {
    FlatAffineGroup g;
    g.linear = {flat_a_theta(M_PI / 2.0)};
    g.translation = {VectorXd::Zero(4)};
    GroupSample s = flat_quotient_holonomy(g, 6);
    CHECK(s.saturated);
    CHECK(s.elements.size() == 4);
    MatrixXd A = flat_a_theta(M_PI / 2.0);
    CHECK(max_abs_diff(A * A * A * A, MatrixXd::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("third turn has order three") {
    FlatAffineGroup g;
    g.linear = {flat_a_theta(2.0 * M_PI / 3.0)};
    GroupSample s = flat_quotient_holonomy(g, 6);
    CHECK(s.saturated);
    CHECK(s.elements.size() == 3);
  }
  SUBCASE("irrational angle never saturates") {
    FlatAffineGroup g;
    g.linear = {flat_a_theta(1.0)};
    GroupSample s = flat_quotient_holonomy(g, 6);
    CHECK(!s.saturated);
    CHECK(s.elements.size() == 13);  // powers -6..6 all distinct
  }
  SUBCASE("pure translations have trivial holonomy") {
    FlatAffineGroup g;
    g.linear = {MatrixXd::Identity(4, 4)};
    g.translation = {VectorXd::Unit(4, 2)};
    GroupSample s = flat_quotient_holonomy(g, 4);
    CHECK(s.elements.size() == 1);
    CHECK(s.saturated);
  }
}

TEST_CASE("symmetric space quotient holonomy") {
  VectorXd lambda(2);
  lambda << -1.0, -4.0;
  CahenWallachSpec spec = make_cahen_wallach_spec(lambda);
  SUBCASE("odd power adds the reflection class") {
    HolonomyDescription h = cahen_wallach_full_holonomy(spec, 1, 0.5);
    CHECK(h.discrete.classes.size() == 2);
    REQUIRE(h.discrete_generators.size() == 1);
    const MatrixXd& A = h.discrete_generators[0].A;
    CHECK(A(0, 0) == -1.0);
    CHECK(A(1, 1) == 1.0);
    CHECK(h.translation_rank == 2);
  }
  SUBCASE("even power leaves the connected part") {
    HolonomyDescription h = cahen_wallach_full_holonomy(spec, 2, 0.0);
    CHECK(h.discrete.classes.size() == 1);
    CHECK(h.translation_rank == 2);
    CHECK(h.type == 2);
  }
  SUBCASE("zero power works for any profile") {
    VectorXd mixed(2);
    mixed << 1.0, -1.0;
    HolonomyDescription h =
        cahen_wallach_full_holonomy(make_cahen_wallach_spec(mixed), 0, 1.0);
    CHECK(h.discrete.classes.size() == 1);
  }
  SUBCASE("reflection power outside the reflection case is rejected") {
    VectorXd mixed(2);
    mixed << 1.0, -1.0;
    CHECK_THROWS_WITH_AS(cahen_wallach_full_holonomy(make_cahen_wallach_spec(mixed), 1, 0.0),
                         doctest::Contains("unavailable"), std::domain_error);
    VectorXd irr(2);
    irr << -1.0, -2.0;  // frequency ratio sqrt(2) is irrational
    CHECK_THROWS_AS(cahen_wallach_full_holonomy(make_cahen_wallach_spec(irr), 1, 0.0),
                    std::domain_error);
  }
}
