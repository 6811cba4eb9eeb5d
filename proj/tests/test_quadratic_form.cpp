#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffib/linalg.hpp"
#include "cliffib/quadratic_form.hpp"

#include <algorithm>

using namespace cliffib;

namespace {

QuadraticForm pencil4() {
  // s*Id + t*diag(1,2,3,4)
  std::vector<std::string> vars = {"s", "t"};
  PolyMatrix g(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) g(i, j) = MultiPoly::zero(vars);
  for (Index i = 0; i < 4; ++i)
    g(i, i) = parse_poly("s + " + std::to_string(i + 1) + "*t", vars);
  return QuadraticForm::create(4, vars, g);
}

QuadraticForm from_strings(Index n, std::vector<std::string> vars,
                           std::vector<std::vector<std::string>> rows) {
  PolyMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = parse_poly(rows[i][j], vars);
  return QuadraticForm::create(n, vars, g);
}

QuadraticForm constant_form(const QMatrix& g) {
  PolyMatrix p(g.rows(), g.cols());
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) p(i, j) = MultiPoly(Rational(g(i, j)));
  return QuadraticForm::create(g.rows(), {}, p);
}

}  // namespace

TEST_CASE("asymmetric input is an error naming the entry pair") {
  std::vector<std::string> vars = {"s"};
  PolyMatrix g(2, 2);
  g(0, 0) = parse_poly("s", vars);
  g(0, 1) = parse_poly("1", vars);
  g(1, 0) = parse_poly("2", vars);
  g(1, 1) = parse_poly("s", vars);
  try {
    QuadraticForm::create(2, vars, g);
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(e.code == "ASYMMETRIC_GRAM");
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("discriminant examples") {
  QuadraticForm q1 = from_strings(2, {"s"}, {{"s", "1"}, {"1", "s"}});
  CHECK(discriminant(q1) == parse_poly("s^2-1", {"s"}));

  QuadraticForm q2 = from_strings(3, {"s"}, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "s"}});
  CHECK(discriminant(q2) == parse_poly("s", {"s"}));

  // pencil: oracle = direct expansion of the product of the diagonal entries
  QuadraticForm p = pencil4();
  MultiPoly oracle = MultiPoly::constant({"s", "t"}, 1);
  for (int k = 1; k <= 4; ++k) oracle *= parse_poly("s+" + std::to_string(k) + "*t", {"s", "t"});
  CHECK(discriminant(p) == oracle);
}

TEST_CASE("corank examples") {
  QMatrix d(3, 3);
  d << 1, 0, 0, 0, 1, 0, 0, 0, 0;
  CHECK(corank_at(constant_form(d), {}) == 1);

  QuadraticForm q1 = from_strings(2, {"s"}, {{"s", "1"}, {"1", "s"}});
  CHECK(corank_at(q1, {Rational(1)}) == 1);

  CHECK(corank_at(pencil4(), {Rational(-2), Rational(1)}) == 1);
}

TEST_CASE("degeneration ideals") {
  QuadraticForm q1 = from_strings(2, {"s"}, {{"s", "1"}, {"1", "s"}});
  auto level1 = degeneration_ideal(q1, 1);
  REQUIRE(level1.size() == 1);
  CHECK(level1[0] == parse_poly("s^2-1", {"s"}));

  // diag(s,t,1): the six 2x2 minors reduce to {st, s, t} after removing zeros
  QuadraticForm q2 = from_strings(3, {"s", "t"}, {{"s", "0", "0"}, {"0", "t", "0"}, {"0", "0", "1"}});
  auto level2 = degeneration_ideal(q2, 2);
  std::vector<std::string> got;
  for (const auto& m : level2) got.push_back(m.print());
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = {"s", "s*t", "t"};
  CHECK(got == want);

  // level n: all gram entries (up to sign/dedup)
  auto level_n = degeneration_ideal(q2, 3);
  std::vector<std::string> entries;
  for (const auto& m : level_n) entries.push_back(m.print());
  std::sort(entries.begin(), entries.end());
  CHECK(entries == std::vector<std::string>{"1", "s", "t"});

  CHECK_THROWS_AS(degeneration_ideal(q2, 0), input_error);
  CHECK_THROWS_AS(degeneration_ideal(q2, 4), input_error);
}

TEST_CASE("orthogonalize examples and contract") {
  // already diagonal
  Orthogonalization o1 = orthogonalize(QMatrix::Identity(3, 3));
  CHECK(o1.basis_change == QMatrix::Identity(3, 3));
  CHECK(o1.diagonal == std::vector<Rational>{1, 1, 1});

  // hyperbolic plane: exact diagonalization with opposite signs
  QMatrix h(2, 2);
  h << 0, Rational(1, 2), Rational(1, 2), 0;
  Orthogonalization o2 = orthogonalize(h);
  QMatrix d = o2.basis_change.transpose() * h * o2.basis_change;
  CHECK(d(0, 1) == 0);
  CHECK(d(1, 0) == 0);
  CHECK(d(0, 0) == o2.diagonal[0]);
  CHECK(d(1, 1) == o2.diagonal[1]);
  CHECK(sgn(o2.diagonal[0]) * sgn(o2.diagonal[1]) == -1);

  // kernel vector placed last
  QMatrix k(3, 3);
  k << 1, 0, 0, 0, 1, 0, 0, 0, 0;
  Orthogonalization o3 = orthogonalize(k);
  CHECK(o3.diagonal == std::vector<Rational>{1, 1, 0});
}

TEST_CASE("orthogonalize property: exact diagonal, zero count = corank") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Index n = 2 + rng.below(4);
    QMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        g(i, j) = Rational(rng.integer(3));
        g(j, i) = g(i, j);
      }
    Orthogonalization o = orthogonalize(g);
    QMatrix d = o.basis_change.transpose() * g * o.basis_change;
    Index zeros = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if (i != j) CHECK(is_zero(d(i, j)));
        if (i == j && is_zero(d(i, i))) ++zeros;
      }
    CHECK(zeros == n - rank_bareiss(g));
    CHECK(!is_zero(det_bareiss(o.basis_change)));
    // zero entries are last
    bool seen_zero = false;
    for (const Rational& a : o.diagonal) {
      if (is_zero(a)) seen_zero = true;
      else CHECK(!seen_zero);
    }
  }
}

TEST_CASE("find_isotropic") {
  QMatrix h(2, 2);
  h << 0, Rational(1, 2), Rational(1, 2), 0;
  auto v1 = find_isotropic(h);
  REQUIRE(v1.has_value());
  CHECK(!v1->isZero());
  CHECK(is_zero(QuadraticForm::value(h, *v1)));

  QMatrix d(3, 3);
  d.setZero();
  d(0, 0) = 1;
  d(1, 1) = -1;
  d(2, 2) = 5;
  auto v2 = find_isotropic(d);
  REQUIRE(v2.has_value());
  CHECK(is_zero(QuadraticForm::value(d, *v2)));

  CHECK(!find_isotropic(QMatrix::Identity(2, 2)).has_value());
}

TEST_CASE("discriminant/corank consistency at random points") {
  QuadraticForm p = pencil4();
  MultiPoly disc = discriminant(p);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> pt = {Rational(rng.integer(6)), Rational(rng.integer(6))};
    QMatrix g = p.gram_at(pt);
    CHECK(disc.evaluate(pt) == det_bareiss(g));
    CHECK((corank_at(p, pt) == 0) == (!is_zero(disc.evaluate(pt))));
  }
}

TEST_CASE("strata nesting at sample points: higher corank implies lower vanishing") {
  QuadraticForm p = pencil4();
  StrataReport r = strata_report(p, 3);
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    std::vector<Rational> pt = {Rational(rng.integer(4)), Rational(rng.integer(4))};
    for (size_t d = 0; d + 1 < r.corank_ideals.size(); ++d) {
      bool upper_vanish = true;
      for (const auto& g : r.corank_ideals[d + 1])
        if (!is_zero(g.evaluate(pt))) { upper_vanish = false; break; }
      if (!upper_vanish) continue;
      for (const auto& g : r.corank_ideals[d]) CHECK(is_zero(g.evaluate(pt)));
    }
  }
}

TEST_CASE("simple degenerations via squarefree discriminant") {
  // distinct eigenvalue pencil: squarefree
  StrataReport r1 = strata_report(pencil4());
  REQUIRE(r1.simple_degenerations.has_value());
  CHECK(*r1.simple_degenerations);

  // repeated factor: s^2
  QuadraticForm rep = from_strings(2, {"s", "t"}, {{"s", "0"}, {"0", "s"}});
  StrataReport r2 = strata_report(rep);
  REQUIRE(r2.simple_degenerations.has_value());
  CHECK(!*r2.simple_degenerations);

  // three and more base parameters: not verified
  QuadraticForm big = from_strings(
      2, {"s", "t", "u"}, {{"s", "t"}, {"t", "u"}});
  StrataReport r3 = strata_report(big);
  CHECK(!r3.simple_degenerations.has_value());
  CHECK(r3.witness.find("not verified") != std::string::npos);

  // one-parameter base uses the univariate test
  QuadraticForm one = from_strings(2, {"s"}, {{"s", "1"}, {"1", "s"}});
  StrataReport r4 = strata_report(one);
  REQUIRE(r4.simple_degenerations.has_value());
  CHECK(*r4.simple_degenerations);  // s^2 - 1 is squarefree
}
