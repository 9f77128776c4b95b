#include "lorhol/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace lorhol {

namespace {

// ---------------------------------------------------------------------------
// Small parsing helpers
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, sep)) out.push_back(trim(piece));
  return out;
}

std::vector<double> parse_doubles(const std::string& s, int line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("scenario line " + std::to_string(line) +
                                  ": expected a number, got '" + tok + "'");
    }
  }
  return out;
}

double parse_one_double(const std::string& s, int line) {
  std::vector<double> v = parse_doubles(s, line);
  if (v.size() != 1) {
    throw std::invalid_argument("scenario line " + std::to_string(line) +
                                ": expected a single number");
  }
  return v.front();
}

VectorXd to_vector(const std::vector<double>& v) {
  VectorXd out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

MatrixXd to_square_matrix(const std::vector<double>& v, int line) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != static_cast<int>(v.size())) {
    throw std::invalid_argument("scenario line " + std::to_string(line) +
                                ": matrix entry count is not a perfect square");
  }
  MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = v[static_cast<std::size_t>(i * n + j)];
  }
  return M;
}

// ---------------------------------------------------------------------------
// JSON helpers (matrices serialize row-major as arrays of row arrays)
// ---------------------------------------------------------------------------

Report vec_json(const VectorXd& v) {
  Report a = Report::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Report mat_json(const MatrixXd& M) {
  Report rows = Report::array();
  for (int i = 0; i < M.rows(); ++i) {
    Report row = Report::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Shared chart builders for the preset catalog
// ---------------------------------------------------------------------------

MatrixXd rotation2(double theta) {
  MatrixXd D(2, 2);
  D << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return D;
}

// Lattice-periodic profile f = sum_i cos(2 pi x^i) with nondegenerate screen
// Hessian away from the half-period points.
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

PpWaveChart quadratic_chart(int n) {
  PpWaveChart c;
  c.n = n;
  c.f = Polynomial(n + 2);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n + 2, 0);
    e[2 + i] = 2;
    c.f.add_term(e, 1.0);
  }
  c.hessian_point = VectorXd::Zero(n + 2);
  return make_ppwave_chart(c);
}

VectorXd chart_base(const PpWaveChart& chart) {
  VectorXd base = VectorXd::Zero(chart.n + 2);
  if (chart.domain != PlaneDomain::FullPlane) base(1) = 1.0;
  return base;
}

DeckIsometry rotated_boost(int n, double lambda, const MatrixXd& O) {
  DeckIsometry d;
  d.kind = DeckIsometry::Kind::Boost;
  d.a = std::exp(lambda);
  d.tau = Polynomial(n + 2);
  d.O = O;
  d.w = VectorXd::Zero(n);
  return make_deck_isometry(d);
}

// ---------------------------------------------------------------------------
// Spin preset definitions
// ---------------------------------------------------------------------------

struct SpinPresetDef {
  std::vector<MatrixXd> gens;
  std::vector<std::vector<int>> rels;
  std::vector<MatrixXd> algebra;
  std::string wang;  // table row key, empty when the table has no row
  int wa = 0, wb = 0;
};

SpinPresetDef spin_preset_def(const std::string& name) {
  SpinPresetDef d;
  if (name == "trivial") {
    d.gens = {MatrixXd::Identity(2, 2)};
    d.rels = {{1}};
  } else if (name == "su2") {
    d.algebra = su_algebra(2);
    d.wang = "su";
    d.wa = 2;
  } else if (name == "su3") {
    d.algebra = su_algebra(3);
    d.wang = "su";
    d.wa = 3;
  } else if (name == "sp1") {
    d.algebra = sp_algebra(1);
    d.wang = "sp";
    d.wa = 1;
  } else if (name == "sp2") {
    d.algebra = sp_algebra(2);
    d.wang = "sp";
    d.wa = 2;
  } else if (name == "g2") {
    d.algebra = g2_algebra();
    d.wang = "g2";
  } else if (name == "spin7") {
    d.algebra = spin7_algebra();
    d.wang = "spin7";
  } else if (name == "su4-z2") {
    d.gens = {su_conjugation(4)};
    d.rels = {{1, 1}};
    d.algebra = su_algebra(4);
    d.wang = "su-z2";
    d.wa = 4;
  } else if (name == "sp2-z3") {
    d.gens = {complex_scalar_rotation(4, 2.0 * M_PI / 3.0)};
    d.rels = {{1, 1, 1}};
    d.algebra = sp_algebra(2);
    d.wang = "sp-zd";
    d.wa = 2;
    d.wb = 3;
  } else {
    throw std::invalid_argument("unknown spin preset '" + name + "'");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Quotient-type derivation from a deck generator list
// ---------------------------------------------------------------------------

QuotientTypeDescriptor derive_quotient_type(const std::vector<DeckIsometry>& decks, int n) {
  QuotientTypeDescriptor d;
  d.identity_section_pd1 = true;
  d.sections_finite = true;
  std::vector<double> lambdas;
  std::vector<VectorXd> shifts;
  for (const DeckIsometry& deck : decks) {
    if (std::abs(std::abs(deck.a) - 1.0) > 1e-12) {
      lambdas.push_back(std::log(std::abs(deck.a)));
    } else if (deck.w.size() == n && deck.w.norm() > 0.0) {
      shifts.push_back(deck.w);
    }
  }
  if (!lambdas.empty()) {
    d.gamma2.kind = DeckFamily::Kind::BoostsHalfPlane;
    d.gamma2.lambdas = to_vector(lambdas);
  } else if (!shifts.empty()) {
    d.gamma2.kind = DeckFamily::Kind::LatticeTranslations;
    d.gamma2.lattice.resize(n, static_cast<int>(shifts.size()));
    for (std::size_t c = 0; c < shifts.size(); ++c) {
      d.gamma2.lattice.col(static_cast<int>(c)) = shifts[c];
    }
  } else {
    d.gamma2.kind = DeckFamily::Kind::Trivial;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Task runners
// ---------------------------------------------------------------------------

void require_chart(const Scenario& s, const std::string& task) {
  if (s.chart_kind != Scenario::ChartKind::PpWave &&
      s.chart_kind != Scenario::ChartKind::CahenWallach) {
    throw std::invalid_argument("task " + task + ": scenario has no metric chart");
  }
}

void run_transport(const Scenario& s, Report& t) {
  require_chart(s, "transport");
  Report loops = Report::array();
  for (int i = 0; i < s.chart.n; ++i) {
    PathSpec loop = rectangle_loop(s.base, 1, 2 + i, 0.7, 0.9);
    MatrixXd T = parallel_transport(s.chart, loop, s.tol);
    Report entry;
    entry["plane"] = Report::array({1, 2 + i});
    entry["matrix"] = mat_json(T);
    MatrixXd G = gram_matrix(s.chart.n);
    entry["lorentz_residual"] = (T.transpose() * G * T - G).cwiseAbs().maxCoeff();
    bool unipotent = false;
    try {
      ParabolicElement p = decompose_parabolic(T, 1e-7);
      unipotent = std::abs(p.a - 1.0) < 1e-7 &&
                  max_abs_diff(p.A, MatrixXd::Identity(s.chart.n, s.chart.n)) < 1e-7;
    } catch (const std::exception&) {
    }
    entry["unipotent"] = unipotent;
    loops.push_back(entry);
  }
  t["loops"] = loops;
}

std::vector<ParabolicAlgebraElement> sample_span(const Scenario& s) {
  return ambrose_singer_sample(s.chart, s.base, default_sample_spec(s.chart, s.base), s.tol);
}

void run_algebra_sample(const Scenario& s, Report& t) {
  require_chart(s, "algebra-sample");
  std::vector<ParabolicAlgebraElement> span = sample_span(s);
  t["dimension"] = static_cast<int>(span.size());
  Report elems = Report::array();
  for (const auto& e : span) {
    Report j;
    j["a"] = e.aLie;
    j["X"] = mat_json(e.X);
    j["v"] = vec_json(e.v);
    elems.push_back(j);
  }
  t["elements"] = elems;
}

void run_classify(const Scenario& s, Report& t) {
  require_chart(s, "classify");
  std::vector<ParabolicAlgebraElement> span = sample_span(s);
  if (span.empty()) {
    t["type"] = nullptr;
    t["note"] = "holonomy sample is empty (flat chart)";
    return;
  }
  TypeReport rep = classify_type(span);
  t["type"] = rep.type;
  t["center_dim"] = static_cast<int>(rep.center_basis.size());
  t["derived_dim"] = static_cast<int>(rep.derived_basis.size());
  if (rep.type == 3) t["phi"] = vec_json(rep.phi_coeffs);
  if (rep.type == 4) {
    t["k"] = rep.k;
    t["psi"] = mat_json(rep.psi);
  }
}

Report holonomy_json(const HolonomyDescription& h) {
  Report j;
  Report classes = Report::array();
  for (const auto& cls : h.discrete.classes) {
    Report c;
    c["a"] = cls.a;
    c["A"] = mat_json(cls.A);
    c["multiplicity"] = cls.multiplicity;
    classes.push_back(c);
  }
  j["discrete_classes"] = classes;
  j["class_count"] = static_cast<int>(h.discrete.classes.size());
  j["lower_bound_only"] = h.discrete.lower_bound_only;
  j["saturated"] = h.sample.saturated;
  j["connected_dim"] = static_cast<int>(h.connected_span.size());
  j["translation_rank"] = h.translation_rank;
  j["has_scaling"] = h.has_scaling;
  j["type"] = h.type;
  j["conditional"] = h.conditional;
  return j;
}

void run_quotient_holonomy(const Scenario& s, Report& t, bool& conditional,
                           std::vector<std::string>& caveats) {
  if (s.chart_kind == Scenario::ChartKind::Flat) {
    if (s.flat_linear.empty()) {
      throw std::invalid_argument("task quotient-holonomy: flat scenario has no generators");
    }
    FlatAffineGroup g;
    g.linear = s.flat_linear;
    GroupSample sample = flat_quotient_holonomy(g, s.word_bound);
    t["element_count"] = static_cast<int>(sample.elements.size());
    t["saturated"] = sample.saturated;
    t["growth_profile"] = sample.growth_profile;
    DiscretePart discrete = discrete_part(sample);
    Report classes = Report::array();
    for (const auto& cls : discrete.classes) {
      Report c;
      c["a"] = cls.a;
      c["A"] = mat_json(cls.A);
      classes.push_back(c);
    }
    t["discrete_classes"] = classes;
    if (!sample.saturated) {
      caveats.push_back("group closure is a lower bound: word search did not saturate");
    }
    return;
  }
  if (s.chart_kind == Scenario::ChartKind::CahenWallach) {
    HolonomyDescription h = cahen_wallach_full_holonomy(s.cw, s.cw_power, s.cw_alpha);
    t.update(holonomy_json(h));
    return;
  }
  require_chart(s, "quotient-holonomy");
  for (const DeckIsometry& deck : s.deck) validate_isometry(s.chart, deck);
  QuotientTypeDescriptor desc = derive_quotient_type(s.deck, s.chart.n);
  QuotientVerdict verdict = check_quotient_type(desc);
  t["verdict"] = verdict.status == VerdictStatus::Pass
                     ? "pass"
                     : (verdict.status == VerdictStatus::Fail ? "fail" : "unknown");
  if (verdict.gamma2_verdict.rationality_caveat) {
    caveats.push_back("exponent ratios certified rational only up to the denominator bound");
  }
  HolonomyDescription h = quotient_holonomy(s.chart, s.deck, s.base, verdict, s.word_bound);
  t.update(holonomy_json(h));
  if (h.conditional) {
    conditional = true;
    caveats.push_back("proper discontinuity could not be decided: " + verdict.reason);
  }
  if (h.discrete.lower_bound_only) {
    caveats.push_back("discrete part is a lower bound: word search did not saturate");
  }
}

void run_spin_check(const Scenario& s, Report& t) {
  if (s.spin_preset.empty()) {
    throw std::invalid_argument("task spin-check: no spin preset configured");
  }
  SpinPresetDef def = spin_preset_def(s.spin_preset);
  LiftedGroup g = lift_group(def.gens, def.rels, def.algebra);
  t["group"] = s.spin_preset;
  t["n"] = g.n;
  t["fixed_dim"] = g.fixed_dim;
  if (!def.wang.empty()) {
    WangEntry row = wang_table_lookup(def.wang, def.wa, def.wb);
    t["table_group"] = row.group;
    t["table_N"] = row.N;
    t["table_match"] = (row.N == g.fixed_dim);
  } else {
    t["table_N"] = nullptr;
    t["table_match"] = nullptr;
  }
  CorrespondenceReport corr = lorentz_fixed_correspondence(g);
  Report c;
  c["riemannian_dim"] = corr.riemannian_dim;
  c["lorentzian_dim"] = corr.lorentzian_dim;
  c["v1_residual"] = corr.v1_residual;
  c["equal"] = corr.equal;
  t["correspondence"] = c;
}

// ---------------------------------------------------------------------------
// Table rendering
// ---------------------------------------------------------------------------

bool all_primitive(const Report& a) {
  for (const auto& x : a) {
    if (x.is_structured()) return false;
  }
  return true;
}

void flatten(const Report& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (j.is_array()) {
    if (all_primitive(j)) {
      std::string joined;
      for (const auto& x : j) {
        if (!joined.empty()) joined += " ";
        joined += x.dump();
      }
      out.emplace_back(prefix, joined.empty() ? "[]" : joined);
      return;
    }
    bool matrix = true;
    for (const auto& row : j) {
      if (!row.is_array() || !all_primitive(row)) matrix = false;
    }
    if (matrix) {
      std::string joined;
      for (const auto& row : j) {
        if (!joined.empty()) joined += " ; ";
        std::string r;
        for (const auto& x : row) {
          if (!r.empty()) r += " ";
          r += x.dump();
        }
        joined += r;
      }
      out.emplace_back(prefix, joined);
      return;
    }
    int idx = 0;
    for (const auto& x : j) {
      flatten(x, prefix + "[" + std::to_string(idx) + "]", out);
      ++idx;
    }
    return;
  }
  out.emplace_back(prefix, j.dump());
}

}  // namespace

// ---------------------------------------------------------------------------
// Preset catalog
// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
  return {"flat-a-theta",
          "ppwave-basic",
          "cahen-wallach-even",
          "cahen-wallach-odd",
          "sign-flip-quotient",
          "boost-quotient",
          "coupled-moebius",
          "coupled-klein",
          "coupled-rotation-boost",
          "screw-5d",
          "infinitely-generated-truncated",
          "spin-trivial",
          "spin-su2",
          "spin-su3",
          "spin-sp1",
          "spin-sp2",
          "spin-g2",
          "spin-spin7",
          "spin-su4-z2",
          "spin-sp2-z3"};
}

Scenario scenario_preset(const std::string& name) {
  Scenario s;
  s.preset = name;
  if (name == "flat-a-theta") {
    s.family = "flat screw quotient: unipotent-rotation generator";
    s.chart_kind = Scenario::ChartKind::Flat;
    s.flat_linear = {flat_a_theta(M_PI / 2.0)};
    s.word_bound = 6;
    s.tasks = {"quotient-holonomy"};
  } else if (name == "ppwave-basic") {
    s.family = "plane-fronted wave with quadratic profile";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = quadratic_chart(2);
    s.base = chart_base(s.chart);
    s.tasks = {"transport", "algebra-sample", "classify", "quotient-holonomy"};
  } else if (name == "cahen-wallach-even" || name == "cahen-wallach-odd") {
    s.family = "symmetric-space quotient with reflection centralizer";
    s.chart_kind = Scenario::ChartKind::CahenWallach;
    VectorXd lambda(2);
    lambda << -1.0, -4.0;
    s.cw = make_cahen_wallach_spec(lambda);
    s.chart = build_cahen_wallach(s.cw);
    s.base = chart_base(s.chart);
    s.cw_power = (name == "cahen-wallach-odd") ? 1 : 2;
    s.cw_alpha = 1.0;
    s.tasks = {"quotient-holonomy"};
  } else if (name == "sign-flip-quotient") {
    s.family = "sign-flip quotient over a periodic profile on the punctured plane";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    s.base = chart_base(s.chart);
    s.deck = {deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0))};
    s.tasks = {"quotient-holonomy"};
  } else if (name == "boost-quotient") {
    s.family = "boost quotient of the u^-2-weighted chart on the half plane";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    s.base = chart_base(s.chart);
    s.deck = {deck_boost(2, 0.3, VectorXd::Unit(2, 0))};
    s.tasks = {"quotient-holonomy"};
  } else if (name == "coupled-moebius") {
    s.family = "sign flip coupled to a screen reflection (one-generator band)";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    s.base = chart_base(s.chart);
    MatrixXd O = MatrixXd::Identity(2, 2);
    O(0, 0) = -1.0;
    s.deck = {deck_sign_flip(2, O, VectorXd::Zero(2))};
    s.tasks = {"quotient-holonomy"};
  } else if (name == "coupled-klein") {
    s.family = "two coupled sign flips (reflection and shifted)";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::PuncturedPlane, false);
    s.base = chart_base(s.chart);
    MatrixXd O = MatrixXd::Identity(2, 2);
    O(0, 0) = -1.0;
    s.deck = {deck_sign_flip(2, O, VectorXd::Zero(2)),
              deck_sign_flip(2, MatrixXd::Identity(2, 2), VectorXd::Unit(2, 0))};
    s.tasks = {"quotient-holonomy"};
  } else if (name == "coupled-rotation-boost") {
    s.family = "boost coupled to a quarter-turn screen rotation";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    s.base = chart_base(s.chart);
    s.deck = {rotated_boost(2, 0.4, rotation2(M_PI / 2.0))};
    s.tasks = {"quotient-holonomy"};
  } else if (name == "screw-5d") {
    s.family = "five-dimensional flat screw quotient";
    s.chart_kind = Scenario::ChartKind::Flat;
    MatrixXd D = MatrixXd::Identity(3, 3);
    D.bottomRightCorner(2, 2) = rotation2(2.0 * M_PI / 3.0);
    s.flat_linear = {make_parabolic(1.0, D, VectorXd::Zero(3)).matrix()};
    s.word_bound = 6;
    s.tasks = {"quotient-holonomy"};
  } else if (name == "infinitely-generated-truncated") {
    s.family = "two-boost quotient sampled to a finite word bound";
    s.chart_kind = Scenario::ChartKind::PpWave;
    s.chart = trig_chart(2, PlaneDomain::HalfPlaneU, true);
    s.base = chart_base(s.chart);
    s.deck = {deck_boost(2, 0.3, VectorXd::Unit(2, 0)),
              deck_boost(2, 0.45, VectorXd::Unit(2, 1))};
    s.word_bound = 3;
    s.tasks = {"quotient-holonomy"};
  } else if (name.rfind("spin-", 0) == 0) {
    const std::string which = name.substr(5);
    spin_preset_def(which);  // validates the name
    s.family = "fixed-spinor computation for preset group '" + which + "'";
    s.spin_preset = which;
    s.tasks = {"spin-check"};
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Scenario file loading
// ---------------------------------------------------------------------------

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario file not found: " + path);

  struct Entry {
    int line;
    std::string key, value;
  };
  std::vector<Entry> entries;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    entries.push_back({lineno, trim(raw.substr(0, eq)), trim(raw.substr(eq + 1))});
  }

  bool schema_seen = false;
  std::string preset;
  for (const Entry& e : entries) {
    if (e.key == "schema") {
      if (parse_one_double(e.value, e.line) != 1.0) {
        throw std::invalid_argument("scenario line " + std::to_string(e.line) +
                                    ": unsupported schema version");
      }
      schema_seen = true;
    } else if (e.key == "preset") {
      preset = e.value;
    }
  }
  if (!schema_seen) throw std::invalid_argument("scenario: missing 'schema' key");

  Scenario s = preset.empty() ? Scenario{} : scenario_preset(preset);
  bool tasks_overridden = false;
  bool decks_overridden = false;
  // v-translations need the screen dimension, which an explicit chart only
  // provides after all lines are read; remember the insertion slots.
  std::vector<std::pair<std::size_t, double>> pending_translations;

  // Explicit chart description, assembled after all lines are read.
  bool has_chart_keys = false;
  int chart_n = -1;
  std::string chart_kind, chart_domain;
  bool chart_u_weight = false;
  std::vector<std::pair<int, std::string>> f_terms, trig_terms;
  std::vector<double> hessian_point;

  auto no_preset = [&](const Entry& e) {
    if (!preset.empty()) {
      throw std::invalid_argument("scenario line " + std::to_string(e.line) + ": key '" + e.key +
                                  "' cannot be combined with a preset");
    }
  };

  for (const Entry& e : entries) {
    if (e.key == "schema" || e.key == "preset") continue;
    if (e.key == "task") {
      if (!tasks_overridden) {
        s.tasks.clear();
        tasks_overridden = true;
      }
      s.tasks.push_back(e.value);
    } else if (e.key == "tol") {
      s.tol = parse_one_double(e.value, e.line);
    } else if (e.key == "base") {
      s.base = to_vector(parse_doubles(e.value, e.line));
    } else if (e.key == "word_bound") {
      s.word_bound = static_cast<int>(parse_one_double(e.value, e.line));
    } else if (e.key == "spin.preset") {
      s.spin_preset = e.value;
    } else if (e.key == "param.lambda") {
      s.cw = make_cahen_wallach_spec(to_vector(parse_doubles(e.value, e.line)));
      s.chart = build_cahen_wallach(s.cw);
      s.chart_kind = Scenario::ChartKind::CahenWallach;
      if (s.base.size() != s.chart.n + 2) s.base = chart_base(s.chart);
    } else if (e.key == "param.m") {
      s.cw_power = static_cast<int>(parse_one_double(e.value, e.line));
    } else if (e.key == "param.alpha") {
      s.cw_alpha = parse_one_double(e.value, e.line);
    } else if (e.key == "param.theta") {
      s.chart_kind = Scenario::ChartKind::Flat;
      s.flat_linear = {flat_a_theta(parse_one_double(e.value, e.line))};
    } else if (e.key == "chart.kind") {
      no_preset(e);
      has_chart_keys = true;
      chart_kind = e.value;
    } else if (e.key == "chart.n") {
      no_preset(e);
      has_chart_keys = true;
      chart_n = static_cast<int>(parse_one_double(e.value, e.line));
    } else if (e.key == "chart.domain") {
      no_preset(e);
      has_chart_keys = true;
      chart_domain = e.value;
    } else if (e.key == "chart.u_weight") {
      no_preset(e);
      has_chart_keys = true;
      chart_u_weight = (e.value == "true" || e.value == "1");
    } else if (e.key == "chart.f.term") {
      no_preset(e);
      has_chart_keys = true;
      f_terms.emplace_back(e.line, e.value);
    } else if (e.key == "chart.trig.term") {
      no_preset(e);
      has_chart_keys = true;
      trig_terms.emplace_back(e.line, e.value);
    } else if (e.key == "chart.hessian_point") {
      no_preset(e);
      has_chart_keys = true;
      hessian_point = parse_doubles(e.value, e.line);
    } else if (e.key == "deck.translation" || e.key == "deck.boost" ||
               e.key == "deck.sign_flip" || e.key == "deck.cw_centralizer") {
      if (!decks_overridden) {
        s.deck.clear();
        decks_overridden = true;
      }
      if (e.key == "deck.translation") {
        pending_translations.emplace_back(s.deck.size(), parse_one_double(e.value, e.line));
        s.deck.push_back(DeckIsometry{});  // placeholder, filled in below
      } else if (e.key == "deck.boost") {
        std::vector<std::string> parts = split(e.value, ';');
        if (parts.size() != 2) {
          throw std::invalid_argument("scenario line " + std::to_string(e.line) +
                                      ": deck.boost expects 'lambda ; w'");
        }
        VectorXd w = to_vector(parse_doubles(parts[1], e.line));
        s.deck.push_back(deck_boost(static_cast<int>(w.size()),
                                    parse_one_double(parts[0], e.line), w));
      } else if (e.key == "deck.sign_flip") {
        std::vector<std::string> parts = split(e.value, ';');
        if (parts.size() != 2) {
          throw std::invalid_argument("scenario line " + std::to_string(e.line) +
                                      ": deck.sign_flip expects 'O row-major ; w'");
        }
        MatrixXd O = to_square_matrix(parse_doubles(parts[0], e.line), e.line);
        VectorXd w = to_vector(parse_doubles(parts[1], e.line));
        s.deck.push_back(deck_sign_flip(static_cast<int>(w.size()), O, w));
      } else {
        s.deck.push_back(
            deck_cw_centralizer(s.cw, static_cast<int>(parse_one_double(e.value, e.line))));
      }
    } else {
      throw std::invalid_argument("scenario line " + std::to_string(e.line) +
                                  ": unknown key '" + e.key + "'");
    }
  }

  if (has_chart_keys) {
    if (chart_kind != "ppwave") {
      throw std::invalid_argument("scenario: explicit charts support chart.kind = ppwave");
    }
    if (chart_n < 1) throw std::invalid_argument("scenario: chart.n must be set and positive");
    PpWaveChart c;
    c.n = chart_n;
    c.f = Polynomial(chart_n + 2);
    for (const auto& [line, text] : f_terms) {
      std::vector<std::string> parts = split(text, ':');
      if (parts.size() != 2) {
        throw std::invalid_argument("scenario line " + std::to_string(line) +
                                    ": chart.f.term expects 'exponents : coefficient'");
      }
      std::vector<double> exps = parse_doubles(parts[0], line);
      if (static_cast<int>(exps.size()) != chart_n + 2) {
        throw std::invalid_argument("scenario line " + std::to_string(line) +
                                    ": expected one exponent per coordinate (v, u, x)");
      }
      std::vector<int> e(exps.size());
      for (std::size_t i = 0; i < exps.size(); ++i) e[i] = static_cast<int>(exps[i]);
      c.f.add_term(e, parse_one_double(parts[1], line));
    }
    for (const auto& [line, text] : trig_terms) {
      std::vector<std::string> parts = split(text, ':');
      if (parts.size() != 3) {
        throw std::invalid_argument("scenario line " + std::to_string(line) +
                                    ": chart.trig.term expects 'amp : freq : phase'");
      }
      CosTerm term;
      term.amp = parse_one_double(parts[0], line);
      term.freq = to_vector(parse_doubles(parts[1], line));
      term.phase = parse_one_double(parts[2], line);
      c.trig.push_back(term);
    }
    if (chart_domain == "punctured") {
      c.domain = PlaneDomain::PuncturedPlane;
    } else if (chart_domain == "half") {
      c.domain = PlaneDomain::HalfPlaneU;
    } else if (!chart_domain.empty() && chart_domain != "full") {
      throw std::invalid_argument("scenario: chart.domain must be full, punctured or half");
    }
    c.u_weight = chart_u_weight;
    if (!hessian_point.empty()) c.hessian_point = to_vector(hessian_point);
    s.chart = make_ppwave_chart(c);
    s.chart_kind = Scenario::ChartKind::PpWave;
    if (s.base.size() != chart_n + 2) s.base = chart_base(s.chart);
    s.family = "explicit metric chart scenario";
  }

  if (!pending_translations.empty()) {
    if (s.chart_kind != Scenario::ChartKind::PpWave &&
        s.chart_kind != Scenario::ChartKind::CahenWallach) {
      throw std::invalid_argument("scenario: deck.translation requires a metric chart");
    }
    for (const auto& [slot, alpha] : pending_translations) {
      s.deck[slot] = deck_translation(s.chart.n, alpha);
    }
  }

  if (s.tasks.empty()) throw std::invalid_argument("scenario: no tasks");
  for (const std::string& task : s.tasks) {
    if (task == "spin-check" && s.spin_preset.empty()) {
      throw std::invalid_argument("scenario: spin-check requires spin.preset");
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Execution and report assembly
// ---------------------------------------------------------------------------

Report run_scenario(const Scenario& s) {
  Report r;
  r["schema"] = 1;
  Report prov;
  if (s.preset.empty()) {
    prov["preset"] = nullptr;
  } else {
    prov["preset"] = s.preset;
  }
  prov["family"] = s.family;
  prov["tolerance"] = s.tol;
  r["provenance"] = prov;

  bool conditional = false;
  std::vector<std::string> caveats;
  Report tasks = Report::array();
  for (const std::string& task : s.tasks) {
    Report t;
    t["task"] = task;
    try {
      if (task == "transport") {
        run_transport(s, t);
      } else if (task == "algebra-sample") {
        run_algebra_sample(s, t);
      } else if (task == "classify") {
        run_classify(s, t);
      } else if (task == "quotient-holonomy") {
        run_quotient_holonomy(s, t, conditional, caveats);
      } else if (task == "spin-check") {
        run_spin_check(s, t);
      } else {
        throw std::invalid_argument("unknown task '" + task + "'");
      }
    } catch (const std::exception& err) {
      throw std::runtime_error("task " + task + ": " + err.what());
    }
    tasks.push_back(t);
  }
  r["tasks"] = tasks;

  Report verdicts;
  verdicts["certified"] = !conditional;
  verdicts["conditional"] = conditional;
  verdicts["caveats"] = caveats;
  r["verdicts"] = verdicts;
  return r;
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "table") {
    throw std::invalid_argument("render_report: format must be json or table");
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key + std::string(width - key.size() + 2, ' ') + value + "\n";
  }
  return out;
}

void emit_report(const Report& report, const std::string& path, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("unwritable path: " + path);
  out << render_report(report, format);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lorhol
