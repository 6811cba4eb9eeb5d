#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffib/presentation.hpp"
#include "cliffib/sod.hpp"

using namespace cliffib;

namespace {

QuadraticForm pencil_distinct(Index n) {
  std::vector<std::string> vars = {"s", "t"};
  PolyMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = MultiPoly::zero(vars);
  for (Index i = 0; i < n; ++i)
    g(i, i) = parse_poly("s + " + std::to_string(i + 1) + "*t", vars);
  return QuadraticForm::create(n, vars, g);
}

QuadraticForm constant_form(const QMatrix& g) {
  PolyMatrix p(g.rows(), g.cols());
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) p(i, j) = MultiPoly(Rational(g(i, j)));
  return QuadraticForm::create(g.rows(), {}, p);
}

}  // namespace

TEST_CASE("fibration shape and exceptional counts") {
  SODReport r4 = fibration_sod(4, "point", true);
  REQUIRE(r4.components.size() == 3);  // n - 1 components
  CHECK(r4.components[0].kind == ComponentKind::CLIFFORD_PART);
  CHECK(r4.components[1].kind == ComponentKind::BASE_TWIST);
  CHECK(r4.components[1].twist == 1);
  CHECK(r4.components[2].twist == 2);
  REQUIRE(r4.expected_exceptional_count.has_value());
  CHECK(*r4.expected_exceptional_count == 4);  // the quadric surface

  SODReport r3 = fibration_sod(3, "point", true);
  CHECK(*r3.expected_exceptional_count == 2);  // the conic

  SODReport r2 = fibration_sod(2, "point", true);
  CHECK(r2.components.size() == 1);  // Clifford part only
  CHECK(*r2.expected_exceptional_count == 2);  // two reduced points

  for (Index n = 2; n <= 8; ++n)
    CHECK(fibration_sod(n, "S", false).components.size() == static_cast<size_t>(n - 1));
}

TEST_CASE("exceptional count agrees with the classical Grothendieck rank") {
  for (Index n = 3; n <= 8; ++n) {
    SODReport r = fibration_sod(n, "point", true);
    CHECK(*r.expected_exceptional_count == kgroup_rank_smooth_quadric(n - 2));
  }
  CHECK(kgroup_rank_smooth_quadric(0) == 2);
  CHECK(kgroup_rank_smooth_quadric(1) == 2);
  CHECK(kgroup_rank_smooth_quadric(2) == 4);
}

TEST_CASE("intersection of quadrics: the three regimes") {
  // r = n/2: equivalence; genus 1 for the quartic elliptic case
  SODReport e = intersection_sod(4, 2);
  CHECK(e.equivalence);
  REQUIRE(e.curve_genus.has_value());
  CHECK(*e.curve_genus == 1);
  CHECK(*e.branch_points == 4);

  // r < n/2: Clifford part then twists O(1), O(2); genus 2 double cover
  SODReport s = intersection_sod(6, 2);
  CHECK(!s.equivalence);
  REQUIRE(s.components.size() == 3);
  CHECK(s.components[0].kind == ComponentKind::CLIFFORD_PART);
  CHECK(s.components[1].twist == 1);
  CHECK(s.components[2].twist == 2);
  CHECK(*s.curve_genus == 2);
  CHECK(*s.branch_points == 6);

  // r > n/2: parity modules in front, ambient on the Clifford side
  SODReport m = intersection_sod(5, 3);
  CHECK(m.ambient == "D^b(P(L), B0)");
  REQUIRE(m.components.size() == 2);
  CHECK(m.components[0].kind == ComponentKind::MODULE_BK);
  CHECK(m.components[0].twist == -1);
  CHECK(m.components[1].kind == ComponentKind::CLIFFORD_PART);
  bool flagged = false;
  for (const auto& c : m.caveats)
    if (c.find("B_{-1}") != std::string::npos || c.find("boundary") != std::string::npos)
      flagged = true;
  CHECK(flagged);

  // the two branches agree at r = n/2
  CHECK(intersection_sod(6, 3).equivalence);

  // a longer module tail
  SODReport long_tail = intersection_sod(6, 4);
  REQUIRE(long_tail.components.size() == 3);
  CHECK(long_tail.components[0].twist == -2);
  CHECK(long_tail.components[1].twist == -1);
}

TEST_CASE("genus arithmetic is the double-cover count") {
  for (Index n = 4; n <= 10; n += 2) {
    SODReport r = intersection_sod(n, 2);
    REQUIRE(r.curve_genus.has_value());
    // double cover of P^1 with n branch points: 2 - 2g = 2*2 - n
    CHECK(2 - 2 * *r.curve_genus == 4 - static_cast<long>(n));
    CHECK(*r.curve_genus == n / 2 - 1);
  }
  CHECK(!intersection_sod(5, 2).curve_genus.has_value());
}

TEST_CASE("pushforward table cases") {
  auto rows = pushforward_table(4, -6, 2);
  for (const auto& row : rows) {
    if (row.m >= 0) {
      CHECK(row.kind == "A_m");
      CHECK(row.dimension == quadric_dim(4, static_cast<Index>(row.m)));
      CHECK(row.cohomological_degree == 0);
    } else if (row.m >= -1) {
      CHECK(row.kind == "ZERO");
    } else {
      CHECK(row.cohomological_degree == 2);
      CHECK(row.dimension == quadric_dim(4, static_cast<Index>(2 - row.m - 4)));
    }
  }
  // spot values
  CHECK(rows[6 + 1].dimension == 4);   // m = 1: the four linear forms
  CHECK(rows[6 - 1].kind == "ZERO");    // m = -1
  CHECK(rows[6 - 2].dimension == 1);    // m = -2: rank one in degree n-2
  CHECK(rows[6 - 2].cohomological_degree == 2);
}

TEST_CASE("pushforward dimensions match the graded dimensions of the coordinate algebra") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Index n = 2 + rng.below(4);
    QMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        g(i, j) = Rational(rng.integer(3));
        g(j, i) = g(i, j);
      }
    if (rank_bareiss(g) < n) { --trial; continue; }
    GradedDims dims = graded_dims(build_A_sigma(g), 6);
    auto rows = pushforward_table(n, 0, 6);
    for (long m = 0; m <= 6; ++m)
      CHECK(Integer(dims.dims[static_cast<size_t>(m)]) == rows[static_cast<size_t>(m)].dimension);
  }
}

TEST_CASE("central reduction certificates") {
  // pencil with distinct eigenvalues: simple degenerations, split point
  QuadraticForm p = pencil_distinct(4);
  CentralReductionReport rep =
      central_reduction_report(p, {{Rational(1), Rational(0)}});
  REQUIRE(rep.simple_degenerations.has_value());
  CHECK(*rep.simple_degenerations);
  CHECK(rep.cover_description.find("double cover") != std::string::npos);
  CHECK(rep.pencil_conclusion.find("genus 1") != std::string::npos);
  REQUIRE(rep.certificates.size() == 1);
  CHECK(rep.certificates[0].corank == 0);
  // at (1,0) the form is the identity: d^2 = 1 splits over Q
  CHECK(rep.certificates[0].structure.kind ==
        AlgebraStructureReport::Kind::PRODUCT_OF_TWO_CENTRAL_SIMPLE);
  CHECK(rep.certificates[0].structure.degree == 2);

  // at a point where the discriminant is not a square the center stays a
  // quadratic field over Q; the certificate defers to the base change
  CentralReductionReport rep2 =
      central_reduction_report(p, {{Rational(1), Rational(1)}});
  CHECK(rep2.certificates[0].structure.kind == AlgebraStructureReport::Kind::OTHER);
  CHECK(rep2.certificates[0].structure.center_dimension == 2);
  CHECK(rep2.certificates[0].structure.description.find("base change") != std::string::npos);

  // corank-1 point of an odd form: quotient certificate of full degree
  QMatrix g110 = QMatrix::Zero(3, 3);
  g110(0, 0) = g110(1, 1) = 1;
  CentralReductionReport rep3 = central_reduction_report(constant_form(g110), {{}});
  REQUIRE(rep3.certificates.size() == 1);
  CHECK(rep3.certificates[0].quotient);
  CHECK(rep3.certificates[0].structure.certificate() == "CENTRAL_SIMPLE(2)");

  // corank-2 sample points are rejected
  QMatrix g1100 = QMatrix::Zero(4, 4);
  g1100(0, 0) = g1100(1, 1) = 1;
  CHECK_THROWS_AS(central_reduction_report(constant_form(g1100), {{}}), input_error);
  try {
    central_reduction_report(constant_form(g1100), {{}});
  } catch (const input_error& e) {
    CHECK(e.code == "CORANK2_POINT");
  }
}

TEST_CASE("odd-rank pencils get the stack description") {
  QuadraticForm p3 = pencil_distinct(3);
  CentralReductionReport rep = central_reduction_report(p3, {{Rational(1), Rational(0)}});
  CHECK(rep.cover_description.find("stack") != std::string::npos);
  CHECK(rep.pencil_conclusion.find("stacky") != std::string::npos);
  // nondegenerate odd point: full Clifford algebra certificate of degree 2^m
  CHECK(rep.certificates[0].structure.dimension == 8);
}
