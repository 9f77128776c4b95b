#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lorhol/spin.hpp"

using namespace lorhol;

namespace {

MatrixXd plane_rotation(int n, int i, int j, double theta) {
  MatrixXd A = MatrixXd::Identity(n, n);
  A(i, i) = A(j, j) = std::cos(theta);
  A(i, j) = -std::sin(theta);
  A(j, i) = std::sin(theta);
  return A;
}

double max_abs_c(const MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("clifford representations") {
  SUBCASE("euclidean pair squares to plus identity") {
    SpinRep rep = clifford_generators(0, 2);
    REQUIRE(rep.gamma.size() == 2);
    CHECK(rep.dim() == 2);
    CHECK(max_abs_c(rep.gamma[0] * rep.gamma[0] - MatrixXcd::Identity(2, 2)) < 1e-14);
    CHECK(max_abs_c(rep.gamma[1] * rep.gamma[1] - MatrixXcd::Identity(2, 2)) < 1e-14);
    CHECK(max_abs_c(rep.gamma[0] * rep.gamma[1] + rep.gamma[1] * rep.gamma[0]) < 1e-14);
  }
  SUBCASE("module dimensions") {
    CHECK(clifford_generators(0, 7).dim() == 8);
    CHECK(clifford_generators(0, 8).dim() == 16);
    CHECK(clifford_generators(1, 5).dim() == 8);  // null frame over Delta_4
  }
  SUBCASE("relation residuals across signatures") {
    for (auto [p, q] : {std::pair{0, 1}, {0, 5}, {0, 10}, {0, 12}, {1, 1}, {1, 3},
                        {1, 9}, {2, 3}, {3, 4}, {5, 7}}) {
      SpinRep rep = clifford_generators(p, q);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(clifford_relation_residual(rep) < 1e-12);
    }
  }
  SUBCASE("the (1,1) module acts through the null basis") {
    SpinRep rep = clifford_generators(1, 1);
    REQUIRE(rep.null_frame);
    VectorXcd u1 = VectorXcd::Zero(2), u2 = VectorXcd::Zero(2);
    u1(0) = 1.0;
    u2(1) = 1.0;
    const double s2 = std::sqrt(2.0);
    CHECK((rep.ell() * u1 - s2 * u2).norm() < 1e-14);
    CHECK((rep.ell() * u2).norm() < 1e-14);
    CHECK((rep.ell_star() * u1).norm() < 1e-14);
    CHECK((rep.ell_star() * u2 + s2 * u1).norm() < 1e-14);
  }
  SUBCASE("null elements are nilpotent in every null frame") {
    for (int n : {1, 2, 4, 6}) {
      SpinRep rep = clifford_generators(1, n + 1);
      CHECK(max_abs_c(rep.ell() * rep.ell()) < 1e-14);
      CHECK(max_abs_c(rep.ell_star() * rep.ell_star()) < 1e-14);
    }
  }
  SUBCASE("degenerate signatures rejected") {
    CHECK_THROWS_AS(clifford_generators(0, 0), std::invalid_argument);
  }
}

TEST_CASE("spin lifts of single rotations") {
  SpinRep rep = clifford_generators(0, 4);
  SUBCASE("identity lifts to plus and minus identity") {
    SpinLift lift = spin_lift_element(MatrixXd::Identity(4, 4), rep);
    CHECK(max_abs_c(lift.plus - MatrixXcd::Identity(4, 4)) < 1e-12);
    CHECK(max_abs_c(lift.minus + MatrixXcd::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("planar rotation lifts to the half-angle element") {
    const double theta = 0.8;
    SpinLift lift = spin_lift_element(plane_rotation(4, 0, 1, theta), rep);
    MatrixXcd expected = std::cos(theta / 2.0) * MatrixXcd::Identity(4, 4) +
                         std::sin(theta / 2.0) * rep.gamma[1] * rep.gamma[0];
    const bool plus = max_abs_c(lift.plus - expected) < 1e-10;
    const bool minus = max_abs_c(lift.minus - expected) < 1e-10;
    CHECK((plus || minus));
    CHECK(lift.residual < 1e-9);
  }
  SUBCASE("a double reflection lifts to a gamma product") {
    MatrixXd S = MatrixXd::Identity(4, 4);
    S(0, 0) = S(1, 1) = -1.0;
    SpinLift lift = spin_lift_element(S, rep);
    MatrixXcd expected = rep.gamma[0] * rep.gamma[1];
    const bool plus = max_abs_c(lift.plus - expected) < 1e-10;
    const bool minus = max_abs_c(lift.minus - expected) < 1e-10;
    CHECK((plus || minus));
  }
  SUBCASE("lift multiplicativity on a sampled pair") {
    MatrixXd A = plane_rotation(4, 0, 2, 0.6);
    MatrixXd B = plane_rotation(4, 1, 3, -1.1);
    SpinLift la = spin_lift_element(A, rep);
    SpinLift lb = spin_lift_element(B, rep);
    SpinLift lab = spin_lift_element(A * B, rep);
    const double d1 = max_abs_c(la.plus * lb.plus - lab.plus);
    const double d2 = max_abs_c(la.plus * lb.plus - lab.minus);
    CHECK(std::min(d1, d2) < 1e-10);
  }
  SUBCASE("determinant minus one is refused") {
    MatrixXd R = MatrixXd::Identity(4, 4);
    R(0, 0) = -1.0;
    CHECK_THROWS_WITH_AS(spin_lift_element(R, rep), doctest::Contains("no spin lift"),
                         std::domain_error);
  }
  SUBCASE("screen rotations lift inside the null frame") {
    SpinRep lrep = clifford_generators(1, 5);
    SpinLift lift = spin_lift_element(plane_rotation(4, 0, 1, 0.7), lrep);
    CHECK(lift.residual < 1e-9);
    // The lift commutes with both null directions.
    CHECK(max_abs_c(lift.plus * lrep.ell() - lrep.ell() * lift.plus) < 1e-10);
    CHECK(max_abs_c(lift.plus * lrep.ell_star() - lrep.ell_star() * lift.plus) < 1e-10);
  }
}

TEST_CASE("group lifts and fixed spinors") {
  SUBCASE("trivial group fixes the whole module") {
    LiftedGroup g = lift_group({MatrixXd::Identity(4, 4)}, {{1}}, {});
    CHECK(g.fixed_dim == 4);
  }
  SUBCASE("half-turn in two of four coordinates admits no lift") {
    MatrixXd S = MatrixXd::Identity(4, 4);
    S(0, 0) = S(1, 1) = -1.0;
    CHECK_THROWS_WITH_AS(lift_group({S}, {{1, 1}}, {}), doctest::Contains("no lift"),
                         std::domain_error);
  }
  SUBCASE("the total half-turn lifts") {
    LiftedGroup g = lift_group({-MatrixXd::Identity(4, 4)}, {{1, 1}}, {});
    CHECK(g.lifted.size() == 1);
    MatrixXcd sq = g.lifted[0] * g.lifted[0];
    CHECK(max_abs_c(sq - MatrixXcd::Identity(4, 4)) < 1e-10);
  }
  SUBCASE("inconsistent relation is reported") {
    MatrixXd R = plane_rotation(4, 0, 1, 0.3);
    CHECK_THROWS_AS(lift_group({R}, {{1, 1}}, {}), std::invalid_argument);
  }
  SUBCASE("su(2) fixes a two-dimensional subspace") {
    LiftedGroup g = lift_group({}, {}, su_algebra(2));
    CHECK(g.fixed_dim == 2);
  }
  SUBCASE("monotonicity: extra generators cannot enlarge the fixed space") {
    LiftedGroup base = lift_group({}, {}, su_algebra(2));
    std::vector<MatrixXd> more = su_algebra(2);
    MatrixXd extra = MatrixXd::Zero(4, 4);
    extra(0, 3) = 1.0;
    extra(3, 0) = -1.0;
    more.push_back(extra);
    LiftedGroup bigger = lift_group({}, {}, more);
    CHECK(bigger.fixed_dim <= base.fixed_dim);
  }
}

TEST_CASE("algebra presets") {
  SUBCASE("dimensions") {
    CHECK(su_algebra(2).size() == 3);
    CHECK(su_algebra(3).size() == 8);
    CHECK(su_algebra(4).size() == 15);
    CHECK(sp_algebra(1).size() == 3);
    CHECK(sp_algebra(2).size() == 10);
    CHECK(g2_algebra().size() == 14);
    CHECK(spin7_algebra().size() == 21);
  }
  SUBCASE("all preset elements are skew") {
    for (const auto& family : {su_algebra(3), sp_algebra(2), g2_algebra(), spin7_algebra()}) {
      for (const MatrixXd& X : family) {
        CHECK((X + X.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SUBCASE("su elements commute with the complex structure") {
    MatrixXd J = complex_scalar_rotation(3, M_PI / 2.0);
    for (const MatrixXd& X : su_algebra(3)) {
      CHECK((J * X - X * J).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("conjugation normalizes su(m)") {
    MatrixXd K = su_conjugation(4);
    CHECK((K * K - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(K.determinant() == doctest::Approx(1.0));
    // K X K^-1 stays inside the span of the su(4) basis.
    std::vector<MatrixXd> basis = su_algebra(4);
    MatrixXd flat(64, static_cast<int>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) flat.col(static_cast<int>(c)) = vec(basis[c]);
    for (const MatrixXd& X : basis) {
      CHECK(in_span(vec(MatrixXd(K * X * K)), flat, 1e-9));
    }
  }
}

TEST_CASE("fixed spinor counts match the classification table") {
  SUBCASE("SU(2) in SO(4)") {
    LiftedGroup g = lift_group({}, {}, su_algebra(2));
    CHECK(g.fixed_dim == wang_table_lookup("su", 2).N);
  }
  SUBCASE("SU(3) in SO(6)") {
    LiftedGroup g = lift_group({}, {}, su_algebra(3));
    CHECK(g.fixed_dim == wang_table_lookup("su", 3).N);
  }
  SUBCASE("Sp(1) in SO(4)") {
    LiftedGroup g = lift_group({}, {}, sp_algebra(1));
    CHECK(g.fixed_dim == wang_table_lookup("sp", 1).N);
  }
  SUBCASE("Sp(2) in SO(8)") {
    LiftedGroup g = lift_group({}, {}, sp_algebra(2));
    CHECK(g.fixed_dim == wang_table_lookup("sp", 2).N);
  }
  SUBCASE("G2 in SO(7)") {
    LiftedGroup g = lift_group({}, {}, g2_algebra());
    CHECK(g.fixed_dim == wang_table_lookup("g2").N);
  }
  SUBCASE("Spin(7) in SO(8)") {
    LiftedGroup g = lift_group({}, {}, spin7_algebra());
    CHECK(g.fixed_dim == wang_table_lookup("spin7").N);
  }
  SUBCASE("SU(4) extended by conjugation in SO(8)") {
    LiftedGroup g = lift_group({su_conjugation(4)}, {{1, 1}}, su_algebra(4));
    CHECK(g.fixed_dim == wang_table_lookup("su-z2", 4).N);
  }
  SUBCASE("Sp(2) x Z3 in SO(8)") {
    MatrixXd c = complex_scalar_rotation(4, 2.0 * M_PI / 3.0);
    LiftedGroup g = lift_group({c}, {{1, 1, 1}}, sp_algebra(2));
    CHECK(g.fixed_dim == wang_table_lookup("sp-zd", 2, 3).N);
  }
}

TEST_CASE("table lookup rows") {
  CHECK(wang_table_lookup("sp", 1).N == 2);
  CHECK(wang_table_lookup("sp", 1).n == 4);
  WangEntry suz = wang_table_lookup("su-z2", 4);
  CHECK(suz.N == 1);
  CHECK(suz.condition == "m divisible by 4");
  CHECK(wang_table_lookup("sp-z2d", 2, 2).N == 1);  // 2*floor(2/4)+1
  CHECK(wang_table_lookup("sp-z2d", 8, 2).N == 5);  // 2*floor(8/4)+1
  CHECK(wang_table_lookup("sp-q4d", 2, 2).N == 0);  // k/2 odd: floor(2/4)
  CHECK(wang_table_lookup("sp-q4d", 4, 2).N == 2);  // k/2 even: floor(4/4)+1
  CHECK(wang_table_lookup("sp-gamma", 2).N == 1);
  WangEntry b = wang_table_lookup("sp-b4d", 2, 6);
  CHECK(!b.computable);
  CHECK(wang_table_lookup("g2").n == 7);
  CHECK(wang_table_lookup("spin7").n == 8);
  CHECK_THROWS_AS(wang_table_lookup("su-z2", 3), std::invalid_argument);
  CHECK_THROWS_AS(wang_table_lookup("sp-zd", 2, 2), std::invalid_argument);  // d even
  CHECK_THROWS_AS(wang_table_lookup("sp-z2d", 3, 2), std::invalid_argument);  // k odd
  CHECK_THROWS_AS(wang_table_lookup("nonsense"), std::invalid_argument);
}

TEST_CASE("fixed spinors transfer to the Lorentzian module") {
  SUBCASE("trivial group in two screen dimensions") {
    LiftedGroup g = lift_group({MatrixXd::Identity(2, 2)}, {{1}}, {});
    CorrespondenceReport r = lorentz_fixed_correspondence(g);
    CHECK(r.riemannian_dim == 2);
    CHECK(r.lorentzian_dim == 2);
    CHECK(r.equal);
    CHECK(r.v1_residual < 1e-10);
  }
  SUBCASE("SU(2) in SO(4)") {
    LiftedGroup g = lift_group({}, {}, su_algebra(2));
    CorrespondenceReport r = lorentz_fixed_correspondence(g);
    CHECK(r.riemannian_dim == 2);
    CHECK(r.lorentzian_dim == 2);
    CHECK(r.v1_residual < 1e-10);
  }
  SUBCASE("SU(4) extended by conjugation") {
    LiftedGroup g = lift_group({su_conjugation(4)}, {{1, 1}}, su_algebra(4));
    CorrespondenceReport r = lorentz_fixed_correspondence(g);
    CHECK(r.riemannian_dim == 1);
    CHECK(r.lorentzian_dim == 1);
    CHECK(r.v1_residual < 1e-10);
  }
  SUBCASE("a group without fixed spinors has none in either module") {
    // so(3) acting on Delta_3 has no invariants.
    std::vector<MatrixXd> so3;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        MatrixXd X = MatrixXd::Zero(3, 3);
        X(i, j) = 1.0;
        X(j, i) = -1.0;
        so3.push_back(X);
      }
    }
    LiftedGroup g = lift_group({}, {}, so3);
    CorrespondenceReport r = lorentz_fixed_correspondence(g);
    CHECK(r.riemannian_dim == 0);
    CHECK(r.lorentzian_dim == 0);
    CHECK(r.equal);
  }
}
