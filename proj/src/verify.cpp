#include "lorhol/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "lorhol/scenario.hpp"

namespace lorhol {

namespace {

MatrixXd rot_generator(int n, int i, int j) {
  MatrixXd X = MatrixXd::Zero(n, n);
  X(i, j) = 1.0;
  X(j, i) = -1.0;
  return X;
}

ParabolicAlgebraElement translation_element(int n, int i) {
  return make_algebra_element(0.0, MatrixXd::Zero(n, n), VectorXd::Unit(n, i));
}

std::vector<ParabolicAlgebraElement> shape_basis(int type) {
  if (type == 1) {
    return {make_algebra_element(1.0, MatrixXd::Zero(2, 2), VectorXd::Zero(2)),
            make_algebra_element(0.0, rot_generator(2, 0, 1), VectorXd::Zero(2)),
            translation_element(2, 0), translation_element(2, 1)};
  }
  if (type == 2) {
    return {make_algebra_element(0.0, rot_generator(2, 0, 1), VectorXd::Zero(2)),
            translation_element(2, 0), translation_element(2, 1)};
  }
  if (type == 3) {
    return {make_algebra_element(1.0, rot_generator(2, 0, 1), VectorXd::Zero(2)),
            translation_element(2, 0), translation_element(2, 1)};
  }
  // Type 4: rotation of (x^2, x^3) coupled to x^1-translations.
  return {make_algebra_element(0.0, rot_generator(3, 1, 2), VectorXd::Unit(3, 0)),
          translation_element(3, 1), translation_element(3, 2)};
}

std::vector<ParabolicAlgebraElement> recombine(const std::vector<ParabolicAlgebraElement>& basis,
                                               std::mt19937& rng) {
  const int n = basis.front().n();
  const int r = static_cast<int>(basis.size());
  std::normal_distribution<double> dist;
  MatrixXd C;
  do {
    C = MatrixXd(r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) C(i, j) = dist(rng);
    }
  } while (std::abs(C.determinant()) < 0.1);
  std::vector<ParabolicAlgebraElement> out;
  for (int i = 0; i < r; ++i) {
    VectorXd c = VectorXd::Zero(algebra_coordinates(basis.front()).size());
    for (int j = 0; j < r; ++j) c += C(i, j) * algebra_coordinates(basis[j]);
    out.push_back(algebra_from_coordinates(c, n));
  }
  return out;
}

ParabolicElement random_parabolic(int n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = dist(rng);
  }
  Eigen::HouseholderQR<MatrixXd> qr(M);
  MatrixXd Q = qr.householderQ();
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = dist(rng);
  double a = std::exp(dist(rng));
  if (dist(rng) > 0) a = -a;
  return make_parabolic(a, Q, x);
}

PpWaveChart quadratic_chart() {
  PpWaveChart c;
  c.n = 2;
  c.f = Polynomial(4);
  c.f.add_term({0, 0, 2, 0}, 1.0);
  c.f.add_term({0, 0, 0, 2}, 1.0);
  c.hessian_point = VectorXd::Zero(4);
  return make_ppwave_chart(c);
}

PpWaveChart trig_chart(PlaneDomain domain, bool u_weight) {
  PpWaveChart c;
  c.n = 2;
  c.f = Polynomial(4);
  for (int i = 0; i < 2; ++i) {
    CosTerm t;
    t.amp = 1.0;
    t.freq = VectorXd::Zero(2);
    t.freq(i) = 2.0 * M_PI;
    c.trig.push_back(t);
  }
  c.domain = domain;
  c.u_weight = u_weight;
  VectorXd hess = VectorXd::Zero(4);
  hess(1) = (domain == PlaneDomain::FullPlane) ? 0.0 : 1.0;
  c.hessian_point = hess;
  return make_ppwave_chart(c);
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& msg) {
    if (ok) detail << msg;
    ok = false;
  }
};

// ---------------------------------------------------------------------------
// Criterion bodies
// ---------------------------------------------------------------------------

void criterion_ppwave_abelian(Check& c) {
  PpWaveChart chart = quadratic_chart();
  VectorXd base = VectorXd::Zero(4);
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> len(0.3, 1.2);
  std::uniform_int_distribution<int> coord(0, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int i = coord(rng), j = coord(rng);
    while (j == i) j = coord(rng);
    MatrixXd T = parallel_transport(chart, rectangle_loop(base, i, j, len(rng), len(rng)), 1e-10);
    ParabolicElement p = decompose_parabolic(T, 1e-7);
    const double dev =
        std::max(std::abs(p.a - 1.0), max_abs_diff(p.A, MatrixXd::Identity(2, 2)));
    worst = std::max(worst, dev);
    if (dev > 1e-8) {
      c.fail("loop " + std::to_string(trial) + " transport is not unipotent");
      return;
    }
  }
  const auto span = ambrose_singer_sample(chart, base, default_sample_spec(chart, base), 1e-10);
  if (span.size() != 2) {
    c.fail("holonomy algebra dimension " + std::to_string(span.size()) + ", expected 2");
    return;
  }
  for (const auto& e : span) {
    if (std::abs(e.aLie) > 1e-8 || e.X.cwiseAbs().maxCoeff() > 1e-8) {
      c.fail("holonomy algebra element is not a pure translation");
      return;
    }
  }
  c.detail << "50 unipotent loops (max deviation " << worst << "), algebra dimension 2";
}

void criterion_representative_crosscheck(Check& c) {
  struct Case {
    std::string name;
    PpWaveChart chart;
    DeckIsometry sigma;
    VectorXd base;
    std::vector<std::vector<VectorXd>> paths;
  };
  std::vector<Case> cases;

  auto pt = [](double v, double u, double x1, double x2) {
    VectorXd p(4);
    p << v, u, x1, x2;
    return p;
  };

  {
    Case k;
    k.name = "sign-flip";
    k.chart = trig_chart(PlaneDomain::PuncturedPlane, false);
    k.sigma = deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0));
    k.base = pt(0, 1, 0, 0);
    k.paths = {{pt(0.5, 0, 0, 0)},
               {pt(-0.5, 0, 0.3, 0)},
               {pt(0.4, 0.2, 0, 0.2), pt(0.4, -0.4, 0, 0.2)}};
    cases.push_back(k);
  }
  {
    Case k;
    k.name = "boost";
    k.chart = trig_chart(PlaneDomain::HalfPlaneU, true);
    k.sigma = deck_boost(2, 0.3, VectorXd::Unit(2, 0));
    k.base = pt(0, 1, 0, 0);
    k.paths = {{}, {pt(0.2, 2, 0.5, 0)}, {pt(0, 1.5, 0, 0.4), pt(0.1, 0.8, 0.2, 0.4)}};
    cases.push_back(k);
  }
  {
    Case k;
    k.name = "symmetric-space centralizer";
    VectorXd lambda(2);
    lambda << -1.0, -4.0;
    CahenWallachSpec spec = make_cahen_wallach_spec(lambda);
    k.chart = build_cahen_wallach(spec);
    k.sigma = deck_cw_centralizer(spec, 1);
    k.base = pt(0, 0, 0, 0);
    k.paths = {{}, {pt(0.2, 1.0, 0.3, 0)}, {pt(0, 0.5, 0, 0.4), pt(0.1, 1.2, 0.2, 0.1)}};
    cases.push_back(k);
  }

  double worst = 0.0;
  for (const Case& k : cases) {
    validate_isometry(k.chart, k.sigma);
    ParabolicElement closed = deck_representative(k.chart, k.sigma);
    for (const auto& waypoints : k.paths) {
      ParabolicElement via =
          deck_representative_transport(k.chart, k.sigma, k.base, waypoints, 1e-8);
      const double dev = std::max(std::abs(closed.a - via.a), max_abs_diff(closed.A, via.A));
      worst = std::max(worst, dev);
      if (dev > 1e-6) {
        c.fail(k.name + ": representative mismatch " + std::to_string(dev));
        return;
      }
    }
  }
  c.detail << "3 presets x 3 paths agree (max deviation " << worst << ")";
}

void criterion_cahen_wallach(Check& c) {
  VectorXd lambda(2);
  lambda << -1.0, -4.0;
  CahenWallachSpec spec = make_cahen_wallach_spec(lambda);

  HolonomyDescription even = cahen_wallach_full_holonomy(spec, 2, 1.0);
  if (even.discrete.classes.size() != 1) {
    c.fail("even power: expected one class, got " +
           std::to_string(even.discrete.classes.size()));
    return;
  }
  const auto& cls0 = even.discrete.classes.front();
  if (std::abs(cls0.a - 1.0) > 1e-8 ||
      max_abs_diff(cls0.A, MatrixXd::Identity(2, 2)) > 1e-8) {
    c.fail("even power: class is not the identity");
    return;
  }

  HolonomyDescription odd = cahen_wallach_full_holonomy(spec, 1, 1.0);
  if (odd.discrete.classes.size() != 2) {
    c.fail("odd power: expected two classes, got " +
           std::to_string(odd.discrete.classes.size()));
    return;
  }
  MatrixXd S = MatrixXd::Identity(2, 2);
  S(0, 0) = -1.0;
  bool found_id = false, found_reflection = false;
  for (const auto& cls : odd.discrete.classes) {
    if (std::abs(cls.a - 1.0) > 1e-8) {
      c.fail("odd power: nontrivial scale class");
      return;
    }
    if (max_abs_diff(cls.A, MatrixXd::Identity(2, 2)) < 1e-8) found_id = true;
    if (max_abs_diff(cls.A, S) < 1e-8) found_reflection = true;
  }
  if (!found_id || !found_reflection) {
    c.fail("odd power: classes are not {identity, reflection}");
    return;
  }
  c.detail << "even power: trivial class; odd power: identity and screen reflection";
}

void criterion_flat_quotient(Check& c) {
  FlatAffineGroup quarter;
  quarter.linear = {flat_a_theta(M_PI / 2.0)};
  GroupSample gs = flat_quotient_holonomy(quarter, 6);
  if (!gs.saturated || gs.elements.size() != 4) {
    c.fail("quarter turn: expected a saturated group of order 4, got " +
           std::to_string(gs.elements.size()) + (gs.saturated ? " (saturated)" : " (open)"));
    return;
  }
  FlatAffineGroup irrational;
  irrational.linear = {flat_a_theta(1.0)};
  GroupSample gi = flat_quotient_holonomy(irrational, 6);
  if (gi.saturated) {
    c.fail("irrational angle: closure saturated unexpectedly");
    return;
  }
  c.detail << "quarter turn saturates at order 4; irrational angle stays open ("
           << gi.elements.size() << " words)";
}

void criterion_decoupling(Check& c) {
  std::mt19937 rng(404);
  for (int type = 1; type <= 4; ++type) {
    for (int trial = 0; trial < 50; ++trial) {
      TypeReport report = classify_type(recombine(shape_basis(type), rng));
      const int n = report.n;
      ParabolicElement P = random_parabolic(n, rng);
      if (type == 4) P.a = 1.0;  // the group's scale part is trivial here
      ParabolicElement PQ = parabolic_product(P, decouple(P, report));
      if (PQ.x.norm() > 1e-8) {
        c.fail("type " + std::to_string(type) + " trial " + std::to_string(trial) +
               ": coupling residual " + std::to_string(PQ.x.norm()));
        return;
      }
      if (type == 3 && std::abs(std::abs(PQ.a) - 1.0) > 1e-10) {
        c.fail("type 3 trial " + std::to_string(trial) + ": scale not +-1");
        return;
      }
    }
  }
  c.detail << "200/200 instances block-diagonalized";
}

void criterion_classification(Check& c) {
  std::mt19937 rng(505);
  int correct = 0;
  for (int trial = 0; trial < 25; ++trial) {
    for (int type = 1; type <= 4; ++type) {
      if (classify_type(recombine(shape_basis(type), rng)).type == type) {
        ++correct;
      } else {
        c.fail("type " + std::to_string(type) + " misclassified in trial " +
               std::to_string(trial));
        return;
      }
    }
  }
  c.detail << correct << "/100 recombined bases classified correctly";
}

struct SpinCase {
  std::string name;
  std::string preset;  // spin preset key, empty for the trivial series
  int n = 0;           // trivial series dimension
  int expected = 0;
};

std::vector<SpinCase> spin_cases() {
  std::vector<SpinCase> cases;
  for (int n : {2, 4, 6, 8}) {
    cases.push_back({"trivial n=" + std::to_string(n), "", n, 1 << (n / 2)});
  }
  cases.push_back({"su2", "su2", 0, 2});
  cases.push_back({"su3", "su3", 0, 2});
  cases.push_back({"sp1", "sp1", 0, 2});
  cases.push_back({"g2", "g2", 0, 1});
  cases.push_back({"spin7", "spin7", 0, 1});
  cases.push_back({"su4-z2", "su4-z2", 0, 1});
  return cases;
}

LiftedGroup lift_case(const SpinCase& sc) {
  if (sc.preset.empty()) {
    return lift_group({MatrixXd::Identity(sc.n, sc.n)}, {{1}}, {});
  }
  if (sc.preset == "su2") return lift_group({}, {}, su_algebra(2));
  if (sc.preset == "su3") return lift_group({}, {}, su_algebra(3));
  if (sc.preset == "sp1") return lift_group({}, {}, sp_algebra(1));
  if (sc.preset == "g2") return lift_group({}, {}, g2_algebra());
  if (sc.preset == "spin7") return lift_group({}, {}, spin7_algebra());
  return lift_group({su_conjugation(4)}, {{1, 1}}, su_algebra(4));
}

void criterion_spin_dimensions(Check& c, std::vector<LiftedGroup>& lifted_out) {
  for (const SpinCase& sc : spin_cases()) {
    LiftedGroup g = lift_case(sc);
    if (g.fixed_dim != sc.expected) {
      c.fail(sc.name + ": fixed dimension " + std::to_string(g.fixed_dim) + ", expected " +
             std::to_string(sc.expected));
      return;
    }
    lifted_out.push_back(std::move(g));
  }
  c.detail << lifted_out.size() << " groups match the tabulated fixed dimensions";
}

void criterion_correspondence(Check& c, const std::vector<LiftedGroup>& lifted) {
  if (lifted.empty()) {
    c.fail("no lifted groups available (previous criterion failed)");
    return;
  }
  double worst = 0.0;
  for (const LiftedGroup& g : lifted) {
    CorrespondenceReport rep = lorentz_fixed_correspondence(g);
    worst = std::max(worst, rep.v1_residual);
    if (!rep.equal || rep.v1_residual > 1e-10) {
      c.fail("correspondence failed: " + std::to_string(rep.riemannian_dim) + " vs " +
             std::to_string(rep.lorentzian_dim) + ", residual " +
             std::to_string(rep.v1_residual));
      return;
    }
  }
  c.detail << "dimensions agree for all " << lifted.size() << " groups (max v1 residual "
           << worst << ")";
}

void criterion_discontinuity(Check& c) {
  DeckFamily pair;
  pair.kind = DeckFamily::Kind::BoostsHalfPlane;
  pair.lambdas = VectorXd(2);
  pair.lambdas << 1.0, std::sqrt(2.0);
  DiscontinuityVerdict bad = check_properly_discontinuous(pair);
  if (bad.pd1 != VerdictStatus::Fail) {
    c.fail("incommensurable boost pair did not fail PD1");
    return;
  }
  if (bad.witness_data.size() != 3) {
    c.fail("missing failure witness");
    return;
  }
  const double k = bad.witness_data(0), l = bad.witness_data(1), err = bad.witness_data(2);
  if ((k == 0.0 && l == 0.0) || err >= 1e-3) {
    c.fail("witness (k, l) = (" + std::to_string(k) + ", " + std::to_string(l) +
           ") with error " + std::to_string(err) + " is not admissible");
    return;
  }
  DeckFamily single;
  single.kind = DeckFamily::Kind::BoostsHalfPlane;
  single.lambdas = VectorXd(1);
  single.lambdas << 0.3;
  DiscontinuityVerdict good = check_properly_discontinuous(single);
  if (good.pd1 != VerdictStatus::Pass || good.pd2 != VerdictStatus::Pass) {
    c.fail("single half-plane boost did not pass");
    return;
  }
  c.detail << "witness |" << k << " l1 + " << l << " l2| = " << err
           << "; single boost passes";
}

void criterion_determinism(Check& c) {
  for (const std::string& name :
       {std::string("ppwave-basic"), std::string("cahen-wallach-odd"),
        std::string("flat-a-theta"), std::string("spin-su2")}) {
    const std::string first = render_report(run_scenario(scenario_preset(name)), "json");
    const std::string second = render_report(run_scenario(scenario_preset(name)), "json");
    if (first != second) {
      c.fail("preset " + name + ": repeated runs render differently");
      return;
    }
  }
  c.detail << "4 preset reports byte-identical across repeated runs";
}

}  // namespace

std::vector<CriterionResult> run_verification() {
  std::vector<CriterionResult> results;
  std::vector<LiftedGroup> lifted;

  struct Item {
    std::string name;
    std::function<void(Check&)> body;
    double time_limit = 0.0;  // seconds, 0 = unlimited
  };
  const std::vector<Item> items = {
      {"quadratic-profile holonomy is translational", criterion_ppwave_abelian, 30.0},
      {"deck representatives match transport",
       [](Check& c) { criterion_representative_crosscheck(c); }},
      {"symmetric-space quotient classes", criterion_cahen_wallach},
      {"flat screw quotient closure", criterion_flat_quotient},
      {"constructive decoupling", criterion_decoupling},
      {"shape classification under basis change", criterion_classification},
      {"fixed-spinor dimensions",
       [&lifted](Check& c) { criterion_spin_dimensions(c, lifted); }, 120.0},
      {"Riemannian-Lorentzian fixed-space correspondence",
       [&lifted](Check& c) { criterion_correspondence(c, lifted); }},
      {"discontinuity verdicts and witnesses", criterion_discontinuity},
      {"report determinism", criterion_determinism},
  };

  int index = 0;
  for (const Item& item : items) {
    ++index;
    CriterionResult res;
    res.index = index;
    res.name = item.name;
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      item.body(check);
    } catch (const std::exception& err) {
      check.fail(std::string("exception: ") + err.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (check.ok && item.time_limit > 0.0 && res.seconds > item.time_limit) {
      check.fail("runtime " + std::to_string(res.seconds) + " s exceeds the limit");
    }
    res.pass = check.ok;
    res.detail = check.detail.str();
    results.push_back(res);
  }
  return results;
}

std::string verification_report(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const CriterionResult& res : results) {
    out << "criterion " << res.index << " [" << (res.pass ? "pass" : "FAIL") << "] "
        << res.name;
    if (!res.detail.empty()) out << ": " << res.detail;
    out << "\n";
  }
  return out.str();
}

}  // namespace lorhol
