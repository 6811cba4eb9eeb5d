#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffib/factorization.hpp"
#include "cliffib/linalg.hpp"

using namespace cliffib;

namespace {

QMatrix hyperbolic2() {
  QMatrix h(2, 2);
  h << 0, Rational(1, 2), Rational(1, 2), 0;
  return h;
}

// independent route: multiply the produced polynomial matrices directly
void check_product_is_q_identity(const MatrixFactorization& mf) {
  PolyMatrix pq = multiply(mf.psi, mf.phi);
  PolyMatrix qp = multiply(mf.phi, mf.psi);
  for (Index i = 0; i < pq.rows(); ++i)
    for (Index j = 0; j < pq.cols(); ++j) {
      MultiPoly want = (i == j) ? mf.q : MultiPoly::zero(mf.vars);
      CHECK(pq(i, j) == want);
      CHECK(qp(i, j) == want);
    }
}

}  // namespace

TEST_CASE("rank-1 factorization") {
  QMatrix a(1, 1);
  a << 5;
  MatrixFactorization mf = build_factorization(a, Side::LEFT);
  CHECK(mf.phi(0, 0) == parse_poly("x1", mf.vars));
  CHECK(mf.psi(0, 0) == parse_poly("5*x1", mf.vars));
  check_product_is_q_identity(mf);
}

TEST_CASE("hyperbolic plane factorization multiplies to x1*x2") {
  MatrixFactorization mf = build_factorization(hyperbolic2(), Side::LEFT);
  CHECK(mf.q == parse_poly("x1*x2", mf.vars));
  check_product_is_q_identity(mf);
}

TEST_CASE("sum of three squares") {
  MatrixFactorization mf = build_factorization(QMatrix::Identity(3, 3), Side::LEFT);
  CHECK(mf.q == parse_poly("x1^2+x2^2+x3^2", mf.vars));
  CHECK(mf.phi.rows() == 4);
  check_product_is_q_identity(mf);
  // entries are linear forms
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (!mf.phi(i, j).is_zero()) CHECK(mf.phi(i, j).degree() == 1);
}

TEST_CASE("both sides factor, for random grams") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    Index n = 2 + rng.below(3);
    QMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        g(i, j) = Rational(rng.integer(3));
        g(j, i) = g(i, j);
      }
    bool zero = true;
    for (Index i = 0; i < n && zero; ++i)
      for (Index j = 0; j < n; ++j)
        if (!is_zero(g(i, j))) { zero = false; break; }
    if (zero) g(0, 0) = 1;
    check_product_is_q_identity(build_factorization(g, Side::LEFT));
    check_product_is_q_identity(build_factorization(g, Side::RIGHT));
  }
}

TEST_CASE("determinant identity") {
  MatrixFactorization mf2 = build_factorization(hyperbolic2(), Side::LEFT);
  Rng rng(9);
  DeterminantCheck d2 = determinant_identity_check(mf2, rng);
  CHECK(d2.full_poly);
  CHECK(d2.identity_holds);

  MatrixFactorization mf3 = build_factorization(QMatrix::Identity(3, 3), Side::LEFT);
  DeterminantCheck d3 = determinant_identity_check(mf3, rng);
  CHECK(d3.full_poly);
  CHECK(d3.identity_holds);

  MatrixFactorization mf5 = build_factorization(QMatrix::Identity(5, 5), Side::LEFT);
  DeterminantCheck d5 = determinant_identity_check(mf5, rng, 3);
  CHECK(!d5.full_poly);
  CHECK(d5.identity_holds);
  CHECK(d5.sample_points == 3);
}

TEST_CASE("cokernel ranks on the quadric") {
  // n = 2 hyperbolic at (1, 0)
  MatrixFactorization mf2 = build_factorization(hyperbolic2(), Side::LEFT);
  QVector p2(2);
  p2 << 1, 0;
  CHECK(cokernel_rank_at(mf2, p2) == 1);

  // n = 4 split at (1, 1, 0, 0): evaluate-and-reduce oracle via rref
  QMatrix g4 = QMatrix::Zero(4, 4);
  g4(0, 0) = 1;
  g4(1, 1) = -1;
  g4(2, 2) = 1;
  g4(3, 3) = -1;
  MatrixFactorization mf4 = build_factorization(g4, Side::LEFT);
  QVector p4(4);
  p4 << 1, 1, 0, 0;
  std::vector<Rational> pt = {1, 1, 0, 0};
  QMatrix at = evaluate_matrix(mf4.phi, pt);
  CHECK(rref(at).rank() == 4);  // oracle route
  CHECK(cokernel_rank_at(mf4, p4) == 4);

  // n = 3 diag(1,-1,1) at (1,1,0)
  QMatrix g3 = QMatrix::Zero(3, 3);
  g3(0, 0) = 1;
  g3(1, 1) = -1;
  g3(2, 2) = 1;
  MatrixFactorization mf3 = build_factorization(g3, Side::LEFT);
  QVector p3(3);
  p3 << 1, 1, 0;
  CHECK(cokernel_rank_at(mf3, p3) == 2);

  // preconditions
  QVector off(3);
  off << 1, 0, 0;
  CHECK_THROWS_AS(cokernel_rank_at(mf3, off), input_error);
  QVector zero = QVector::Zero(3);
  CHECK_THROWS_AS(cokernel_rank_at(mf3, zero), input_error);
}

TEST_CASE("invertibility off the quadric") {
  MatrixFactorization mf = build_factorization(QMatrix::Identity(3, 3), Side::LEFT);
  std::vector<Rational> pt = {1, 2, 3};  // q = 14 != 0
  QMatrix at = evaluate_matrix(mf.phi, pt);
  CHECK(rank_bareiss(at) == 4);
  CHECK(!is_zero(det_bareiss(at)));
}

TEST_CASE("periodicity shadow") {
  PeriodicityReport r2 = periodicity_check(hyperbolic2(), {[] {
                                             QVector v(2);
                                             v << 1, 0;
                                             return v;
                                           }(),
                                           [] {
                                             QVector v(2);
                                             v << 0, 1;
                                             return v;
                                           }()});
  CHECK(r2.all_equal);
  CHECK(r2.all_expected);
  for (const auto& p : r2.points) CHECK(p.coker_phi == 1);

  // n = 4 split form, random isotropic points from the hyperbolic pairing
  QMatrix g4 = QMatrix::Zero(4, 4);
  g4(0, 1) = g4(1, 0) = Rational(1, 2);
  g4(2, 3) = g4(3, 2) = Rational(1, 2);
  Rng rng(11);
  std::vector<QVector> pts;
  while (pts.size() < 5) {
    // x1 x2 + x3 x4 = 0: pick x2, x3, x4 and solve for x1
    Rational x2(rng.nonzero_integer(9)), x3(rng.integer(9)), x4(rng.integer(9));
    QVector v(4);
    v << -x3 * x4 / x2, x2, x3, x4;
    pts.push_back(v);
  }
  PeriodicityReport r4 = periodicity_check(g4, pts);
  CHECK(r4.all_equal);
  CHECK(r4.all_expected);
  for (const auto& p : r4.points) CHECK(p.coker_phi == 4);

  // vertex of a degenerate form: recorded but not asserted
  QMatrix gd = QMatrix::Zero(3, 3);
  gd(0, 0) = 1;
  gd(1, 1) = -1;
  QVector vertex(3);
  vertex << 0, 0, 1;
  PeriodicityReport rd = periodicity_check(gd, {vertex});
  REQUIRE(rd.points.size() == 1);
  CHECK(rd.points[0].vertex);
  CHECK(rd.all_expected);  // vertex points are exempt from the 2^{n-2} law
  CHECK(rd.points[0].coker_phi == rd.points[0].coker_psi);

  QVector bad(2);
  bad << 1, 1;
  CHECK_THROWS_AS(periodicity_check(hyperbolic2(), {bad}), input_error);
}

TEST_CASE("parameterized factorization specializes consistently") {
  std::vector<std::string> vars = {"s"};
  PolyMatrix g(2, 2);
  g(0, 0) = parse_poly("s", vars);
  g(0, 1) = parse_poly("1", vars);
  g(1, 0) = parse_poly("1", vars);
  g(1, 1) = parse_poly("-s", vars);
  QuadraticForm form = QuadraticForm::create(2, vars, g);
  MatrixFactorization family = build_factorization(form, Side::LEFT);
  CHECK(family.vars == std::vector<std::string>{"s", "x1", "x2"});

  MatrixFactorization at3 = specialize_base(family, {Rational(3)});
  QMatrix g3(2, 2);
  g3 << 3, 1, 1, -3;
  MatrixFactorization direct = build_factorization(g3, Side::LEFT);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      CHECK(at3.phi(i, j) == direct.phi(i, j));
      CHECK(at3.psi(i, j) == direct.psi(i, j));
    }
  CHECK(at3.q == direct.q);
}
