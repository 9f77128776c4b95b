#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "lorhol/algebra.hpp"

using namespace lorhol;

namespace {

MatrixXd rot_generator(int n, int i, int j) {
  MatrixXd X = MatrixXd::Zero(n, n);
  X(i, j) = 1.0;
  X(j, i) = -1.0;
  return X;
}

ParabolicAlgebraElement scaling(int n) {
  return make_algebra_element(1.0, MatrixXd::Zero(n, n), VectorXd::Zero(n));
}

ParabolicAlgebraElement translation(int n, int i) {
  return make_algebra_element(0.0, MatrixXd::Zero(n, n), VectorXd::Unit(n, i));
}

// Uncoupled algebra (R + so(2)) |x R^2.
std::vector<ParabolicAlgebraElement> type1_basis() {
  const int n = 2;
  return {scaling(n), make_algebra_element(0.0, rot_generator(n, 0, 1), VectorXd::Zero(n)),
          translation(n, 0), translation(n, 1)};
}

// so(2) |x R^2, no scaling.
std::vector<ParabolicAlgebraElement> type2_basis() {
  const int n = 2;
  return {make_algebra_element(0.0, rot_generator(n, 0, 1), VectorXd::Zero(n)),
          translation(n, 0), translation(n, 1)};
}

// Scaling coupled to the center: elements (phi(Z), Z, 0) with phi(Z) = Z_12.
std::vector<ParabolicAlgebraElement> type3_basis() {
  const int n = 2;
  return {make_algebra_element(1.0, rot_generator(n, 0, 1), VectorXd::Zero(n)),
          translation(n, 0), translation(n, 1)};
}

// n = 3: so(2) rotating (x^2, x^3), coupled to translations along x^1;
// free translations only in (x^2, x^3).
std::vector<ParabolicAlgebraElement> type4_basis() {
  const int n = 3;
  return {make_algebra_element(0.0, rot_generator(n, 1, 2), VectorXd::Unit(n, 0)),
          translation(n, 1), translation(n, 2)};
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

}  // namespace

TEST_CASE("algebra element realization") {
  const int n = 2;
  ParabolicAlgebraElement e =
      make_algebra_element(0.5, rot_generator(n, 0, 1), VectorXd::Unit(n, 0));
  MatrixXd m = e.matrix();
  MatrixXd G = gram_matrix(n);
  CHECK(max_abs_diff(m.transpose() * G, MatrixXd(-G * m)) < 1e-14);
  ParabolicAlgebraElement back = decompose_algebra(m);
  CHECK(back.aLie == doctest::Approx(0.5));
  CHECK(max_abs_diff(back.X, e.X) < 1e-14);
  CHECK((back.v - e.v).norm() < 1e-14);
}

TEST_CASE("bracket closure and types") {
  SUBCASE("type 1") {
    TypeReport r = classify_type(type1_basis());
    CHECK(r.type == 1);
    CHECK(r.g_basis.size() == 1);
  }
  SUBCASE("type 2") {
    TypeReport r = classify_type(type2_basis());
    CHECK(r.type == 2);
  }
  SUBCASE("type 3 with recovered functional") {
    TypeReport r = classify_type(type3_basis());
    CHECK(r.type == 3);
    REQUIRE(r.center_basis.size() == 1);
    // phi evaluated on Z = rot_generator(2,0,1) must give Z_12 = 1.
    MatrixXd Z = rot_generator(2, 0, 1);
    double c = (Z.cwiseProduct(r.center_basis[0])).sum();
    CHECK(r.phi_coeffs(0) * c == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("type 4 with splitting") {
    TypeReport r = classify_type(type4_basis());
    CHECK(r.type == 4);
    CHECK(r.k == 1);
    // The coupled direction is x^1.
    CHECK(std::abs(r.k_basis(0, 0)) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("non-closed basis rejected") {
    const int n = 2;
    // so(2) plus a single translation does not close under brackets.
    std::vector<ParabolicAlgebraElement> bad = {
        make_algebra_element(0.0, rot_generator(n, 0, 1), VectorXd::Zero(n)),
        translation(n, 0)};
    CHECK_THROWS_WITH_AS(classify_type(bad), doctest::Contains("not a subalgebra"),
                         std::domain_error);
  }
}

TEST_CASE("classification is basis independent") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    CHECK(classify_type(recombine(type1_basis(), rng)).type == 1);
    CHECK(classify_type(recombine(type2_basis(), rng)).type == 2);
    CHECK(classify_type(recombine(type3_basis(), rng)).type == 3);
    CHECK(classify_type(recombine(type4_basis(), rng)).type == 4);
  }
}

TEST_CASE("decoupling") {
  std::mt19937 rng(17);
  SUBCASE("block-diagonal input needs no correction") {
    TypeReport r = classify_type(type1_basis());
    ParabolicElement P = make_parabolic(2.0, MatrixXd::Identity(2, 2), VectorXd::Zero(2));
    ParabolicElement Q = decouple(P, r);
    CHECK(max_abs_diff(Q.matrix(), MatrixXd::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("types 1 and 2 translate away the coupling") {
    for (const auto& basis : {type1_basis(), type2_basis()}) {
      TypeReport r = classify_type(basis);
      for (int trial = 0; trial < 30; ++trial) {
        ParabolicElement P = random_parabolic(2, rng);
        ParabolicElement Q = decouple(P, r);
        ParabolicElement PQ = parabolic_product(P, Q);
        CHECK(PQ.x.norm() < 1e-8);
      }
    }
  }
  SUBCASE("type 3 lands in Z_2 x O(n)") {
    TypeReport r = classify_type(type3_basis());
    for (int trial = 0; trial < 30; ++trial) {
      ParabolicElement P = random_parabolic(2, rng);
      ParabolicElement Q = decouple(P, r);
      ParabolicElement PQ = parabolic_product(P, Q);
      CHECK(PQ.x.norm() < 1e-8);
      CHECK(std::abs(std::abs(PQ.a) - 1.0) < 1e-10);
    }
  }
  SUBCASE("type 4 cancels the coupled translation") {
    TypeReport r = classify_type(type4_basis());
    for (int trial = 0; trial < 30; ++trial) {
      // The group's scale part is trivial for this shape.
      ParabolicElement P = random_parabolic(3, rng);
      P.a = 1.0;
      ParabolicElement Q = decouple(P, r);
      ParabolicElement PQ = parabolic_product(P, Q);
      CHECK(PQ.x.norm() < 1e-8);
    }
  }
}

TEST_CASE("invariant null lines") {
  const int n = 2;
  SUBCASE("unipotent transports fix exactly the distinguished line") {
    VectorXd y1(n), y2(n);
    y1 << 1.0, 0.2;
    y2 << -0.3, 0.9;
    std::vector<MatrixXd> gens = {make_parabolic(1.0, MatrixXd::Identity(n, n), y1).matrix(),
                                  make_parabolic(1.0, MatrixXd::Identity(n, n), y2).matrix()};
    NullLineResult r = invariant_null_lines(gens);
    CHECK(!r.all);
    REQUIRE(r.lines.size() == 1);
    VectorXd l = VectorXd::Unit(n + 2, 0);
    CHECK(std::min((r.lines[0] - l).norm(), (r.lines[0] + l).norm()) < 1e-8);
  }
  SUBCASE("identity fixes everything") {
    NullLineResult r = invariant_null_lines({MatrixXd::Identity(4, 4)});
    CHECK(r.all);
  }
  SUBCASE("opposite null rotations share no eigenline") {
    // n = 1: a unipotent fixing l and its transpose counterpart fixing l*.
    VectorXd y(1);
    y << 1.0;
    MatrixXd upper = make_parabolic(1.0, MatrixXd::Identity(1, 1), y).matrix();
    MatrixXd m = MatrixXd::Zero(3, 3);  // Lorentz algebra, not parabolic
    m(1, 0) = 1.0;
    m(2, 1) = -1.0;
    MatrixXd G = gram_matrix(1);
    REQUIRE(max_abs_diff(m.transpose() * G, MatrixXd(-G * m)) < 1e-12);
    MatrixXd lower = (m.exp());
    NullLineResult r = invariant_null_lines({upper, lower});
    CHECK(r.lines.empty());
    CHECK(!r.all);
  }
}

TEST_CASE("normalizer check") {
  const int n = 2;
  VectorXd y1(n), y2(n);
  y1 << 1.0, 0.0;
  y2 << 0.0, 1.0;
  std::vector<MatrixXd> h0 = {make_parabolic(1.0, MatrixXd::Identity(n, n), y1).matrix(),
                              make_parabolic(1.0, MatrixXd::Identity(n, n), y2).matrix()};
  SUBCASE("member of the group normalizes it") {
    NormalizerResult r = normalizer_check(h0, h0.front());
    CHECK(r.ok);
  }
  SUBCASE("sign flip normalizes the translation group") {
    MatrixXd g = MatrixXd::Identity(n + 2, n + 2);
    g(0, 0) = -1.0;
    g(n + 1, n + 1) = -1.0;
    NormalizerResult r = normalizer_check(h0, g);
    CHECK(r.ok);
  }
  SUBCASE("a map moving the null line fails") {
    // Swap l and l* (the Gram matrix itself is Lorentz).
    MatrixXd g = gram_matrix(n);
    NormalizerResult r = normalizer_check(h0, g);
    CHECK(!r.ok);
    CHECK(r.witness.size() > 0);
  }
}
