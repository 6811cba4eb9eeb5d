#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffib/clifford.hpp"
#include "cliffib/linalg.hpp"

#include <map>
#include <vector>

using namespace cliffib;

namespace {

// Independent oracle: elements as formal sums of generator words, reduced by
// literal rewriting e_j e_i -> -e_i e_j + 2 G_ij (j > i), e_i e_i -> G_ii.
// No bit tricks, no sharing with the engine.
using Word = std::vector<int>;
using WordSum = std::map<Word, Rational>;

void add_term(WordSum& s, const Word& w, const Rational& c) {
  s[w] += c;
  if (is_zero(s[w])) s.erase(w);
}

WordSum rewrite(const QMatrix& g, const Word& w, const Rational& c) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] > w[i + 1]) {
      Word swapped(w), dropped;
      std::swap(swapped[i], swapped[i + 1]);
      for (size_t k = 0; k < w.size(); ++k)
        if (k != i && k != i + 1) dropped.push_back(w[k]);
      WordSum out;
      for (const auto& [ww, cc] : rewrite(g, swapped, -c)) add_term(out, ww, cc);
      Rational twice = 2 * g(w[i], w[i + 1]);
      if (!is_zero(twice))
        for (const auto& [ww, cc] : rewrite(g, dropped, c * twice)) add_term(out, ww, cc);
      return out;
    }
    if (w[i] == w[i + 1]) {
      Word dropped;
      for (size_t k = 0; k < w.size(); ++k)
        if (k != i && k != i + 1) dropped.push_back(w[k]);
      if (is_zero(g(w[i], w[i]))) return {};
      return rewrite(g, dropped, c * g(w[i], w[i]));
    }
  }
  WordSum out;
  if (!is_zero(c)) out[w] = c;
  return out;
}

WordSum oracle_multiply(const QMatrix& g, const WordSum& a, const WordSum& b) {
  WordSum out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w(wa);
      w.insert(w.end(), wb.begin(), wb.end());
      for (const auto& [ww, cc] : rewrite(g, w, ca * cb)) add_term(out, ww, cc);
    }
  return out;
}

WordSum to_words(const CliffordElement& e) {
  WordSum s;
  for (const auto& [subset, c] : e.coeffs) {
    Word w;
    for (int i = 0; i < 32; ++i)
      if (subset & (Subset(1) << i)) w.push_back(i);
    s[w] = c;
  }
  return s;
}

CliffordElement monomial(Subset s, Rational c = 1) {
  CliffordElement e;
  e.add(s, c);
  return e;
}

QMatrix random_symmetric(Rng& rng, Index n, long bound = 3) {
  QMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      g(i, j) = make_rational(rng.integer(bound), 1 + static_cast<long>(rng.below(2)));
      g(j, i) = g(i, j);
    }
  return g;
}

CliffordElement random_element(Rng& rng, Index n, int terms, int parity_filter = -1) {
  CliffordElement e;
  for (int t = 0; t < terms; ++t) {
    Subset s = static_cast<Subset>(rng.below(Subset(1) << n));
    if (parity_filter >= 0 && parity(s) != parity_filter) continue;
    e.add(s, Rational(rng.integer(5)));
  }
  return e;
}

}  // namespace

TEST_CASE("multiplication matches the literal rewriting oracle on the stated examples") {
  QMatrix id2 = QMatrix::Identity(2, 2);
  CliffordAlgebra a(2, id2);

  // e1 * (e1 e2) = e2, derived by the oracle first
  WordSum got = to_words(a.multiply(monomial(0b01), monomial(0b11)));
  WordSum expect = oracle_multiply(id2, {{{0}, 1}}, {{{0, 1}, 1}});
  CHECK(got == expect);
  CHECK(a.multiply(monomial(0b01), monomial(0b11)) == monomial(0b10));

  // e2 * e1 = -e1 e2 (gram(1,2) = 0)
  CHECK(a.multiply(monomial(0b10), monomial(0b01)) == monomial(0b11, -1));

  // hyperbolic plane: (e1 e2)^2 = e1 e2, recomputed independently
  QMatrix h(2, 2);
  h << 0, Rational(1, 2), Rational(1, 2), 0;
  CliffordAlgebra ha(2, h);
  WordSum oracle_sq = oracle_multiply(h, {{{0, 1}, 1}}, {{{0, 1}, 1}});
  REQUIRE(oracle_sq.size() == 1);
  CHECK(oracle_sq.at({0, 1}) == 1);  // the oracle says (e1 e2)^2 = e1 e2
  CHECK(ha.multiply(monomial(0b11), monomial(0b11)) == monomial(0b11));
  // and e1 e2 * e2 e1 = 0 since e2 e2 = 0
  CHECK(ha.multiply(monomial(0b11), monomial(0b11, 1)).coeffs.size() == 1);
  CHECK(ha.monomial_product(0b11, 0b11) == monomial(0b11));
}

TEST_CASE("engine agrees with the oracle on random products") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Index n = 2 + rng.below(3);
    QMatrix g = random_symmetric(rng, n);
    CliffordAlgebra a(n, g);
    CliffordElement x = random_element(rng, n, 3), y = random_element(rng, n, 3);
    CHECK(to_words(a.multiply(x, y)) == oracle_multiply(g, to_words(x), to_words(y)));
  }
}

TEST_CASE("defining relations and grading") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Index n = 2 + rng.below(4);
    QMatrix g = random_symmetric(rng, n);
    CliffordAlgebra a(n, g);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        CliffordElement lhs = a.multiply(a.generator(i), a.generator(j)) +
                              a.multiply(a.generator(j), a.generator(i));
        CHECK(lhs == a.scalar_element(2 * g(i, j)));
      }
    // associativity and bilinearity on random triples
    CliffordElement x = random_element(rng, n, 3), y = random_element(rng, n, 3),
                    z = random_element(rng, n, 3);
    CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
    CHECK(a.multiply(x + y, z) == a.multiply(x, z) + a.multiply(y, z));
    // parity multiplicativity on pure-parity elements
    CliffordElement even = random_element(rng, n, 4, 0), odd = random_element(rng, n, 4, 1);
    if (!even.is_zero() && !odd.is_zero()) {
      CliffordElement p = a.multiply(even, odd);
      if (!p.is_zero()) CHECK(p.pure_parity() == 1);
      CliffordElement q = a.multiply(odd, odd);
      if (!q.is_zero()) CHECK(q.pure_parity() == 0);
    }
  }
}

TEST_CASE("mult_map_matrix ranks and composition") {
  QMatrix h(2, 2);
  h << 0, Rational(1, 2), Rational(1, 2), 0;
  CliffordAlgebra ha(2, h);
  QVector v(2);
  v << 1, 0;
  QMatrix m = mult_map_matrix(ha, v, Side::LEFT, Parity::EVEN);
  CHECK(m.rows() == 2);
  CHECK(rank_bareiss(m) == 1);  // q(v) = 0: rank 2^{n-2}

  CliffordAlgebra id2(2, QMatrix::Identity(2, 2));
  CHECK(rank_bareiss(mult_map_matrix(id2, v, Side::LEFT, Parity::EVEN)) == 2);

  QVector zero = QVector::Zero(2);
  CHECK(mult_map_matrix(id2, zero, Side::LEFT, Parity::EVEN).isZero());

  // composition EVEN -> ODD -> EVEN equals q(v) Id
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    Index n = 2 + rng.below(3);
    QMatrix g = random_symmetric(rng, n);
    CliffordAlgebra a(n, g);
    QVector w(n);
    for (Index i = 0; i < n; ++i) w(i) = Rational(rng.integer(4));
    QMatrix up = mult_map_matrix(a, w, Side::LEFT, Parity::EVEN);
    QMatrix down = mult_map_matrix(a, w, Side::LEFT, Parity::ODD);
    Rational qv = QuadraticForm::value(g, w);
    CHECK(down * up == QMatrix(qv * QMatrix::Identity(up.cols(), up.cols())));
    // rank law
    Index r = rank_bareiss(up);
    if (!is_zero(qv)) CHECK(r == (Index(1) << (n - 1)));
    else if (!w.isZero()) CHECK(r == (Index(1) << (n - 2)));
  }
}

TEST_CASE("central element: squares, centrality, anticommutation") {
  // n = 2: d = e1 e2, d^2 = -1
  CliffordAlgebra a2(2, QMatrix::Identity(2, 2));
  CentralElement d2 = central_element(a2);
  CHECK(d2.d == monomial(0b11));
  CHECK(d2.d_squared == -1);

  // n = 3: d commutes with every generator
  CliffordAlgebra a3(3, QMatrix::Identity(3, 3));
  CentralElement d3 = central_element(a3);
  CHECK(d3.d == monomial(0b111));
  for (Index i = 0; i < 3; ++i)
    CHECK(a3.multiply(a3.generator(i), d3.d) == a3.multiply(d3.d, a3.generator(i)));

  // n = 4: d commutes with e1 e2, anticommutes with e1
  CliffordAlgebra a4(4, QMatrix::Identity(4, 4));
  CentralElement d4 = central_element(a4);
  CliffordElement e12 = monomial(0b0011);
  CHECK(a4.multiply(e12, d4.d) == a4.multiply(d4.d, e12));
  CHECK(a4.multiply(a4.generator(0), d4.d) == -a4.multiply(d4.d, a4.generator(0)));

  // sign rule e_i d = (-1)^{n-1} d e_i and d^2 sign formula on diagonal grams
  Rng rng(41);
  for (Index n = 2; n <= 6; ++n) {
    QMatrix g = QMatrix::Zero(n, n);
    Rational prod = 1;
    for (Index i = 0; i < n; ++i) {
      g(i, i) = Rational(rng.nonzero_integer(5));
      prod *= g(i, i);
    }
    CliffordAlgebra a(n, g);
    CentralElement ce = central_element(a);
    int sign = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
    CHECK(ce.d_squared == Rational(sign) * prod);
    Rational flip = (n % 2 == 1) ? 1 : -1;
    for (Index i = 0; i < n; ++i) {
      CliffordElement lhs = a.multiply(a.generator(i), ce.d);
      CliffordElement rhs = a.multiply(ce.d, a.generator(i));
      CliffordElement scaled = rhs;
      scaled *= flip;
      CHECK(lhs == scaled);
    }
  }
}

TEST_CASE("central element scaling is primitive with positive leading coefficient") {
  QMatrix g(2, 2);
  g << Rational(1, 2), 0, 0, Rational(-2, 3);
  CliffordAlgebra a(2, g);
  CentralElement ce = central_element(a);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [s, c] : ce.d.coeffs) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  CHECK(den_lcm == 1);
  CHECK(num_gcd == 1);
}

TEST_CASE("structure reports") {
  // even part of a 3-dim nondegenerate form: 4-dimensional, central simple
  AlgebraStructureReport even3 = structure_report(CliffordAlgebra(3, QMatrix::Identity(3, 3)),
                                                  Subalgebra::EVEN);
  CHECK(even3.dimension == 4);
  CHECK(even3.radical_dimension == 0);
  CHECK(even3.center_dimension == 1);
  CHECK(even3.kind == AlgebraStructureReport::Kind::CENTRAL_SIMPLE);
  CHECK(even3.degree == 2);
  CHECK(even3.certificate() == "CENTRAL_SIMPLE(2)");

  // zero form: the exterior algebra, radical of codimension 1
  AlgebraStructureReport ext = structure_report(CliffordAlgebra(3, QMatrix::Zero(3, 3)),
                                                Subalgebra::FULL);
  CHECK(ext.dimension == 8);
  CHECK(ext.radical_dimension == 7);
  CHECK(ext.kind == AlgebraStructureReport::Kind::NOT_SEMISIMPLE);

  // even part in 4 variables: center 2, d^2 = 1 splits over Q
  AlgebraStructureReport even4 = structure_report(CliffordAlgebra(4, QMatrix::Identity(4, 4)),
                                                  Subalgebra::EVEN);
  CHECK(even4.dimension == 8);
  CHECK(even4.radical_dimension == 0);
  CHECK(even4.center_dimension == 2);
  CHECK(even4.kind == AlgebraStructureReport::Kind::PRODUCT_OF_TWO_CENTRAL_SIMPLE);
  CHECK(even4.degree == 2);
  REQUIRE(even4.blocks.size() == 2);
  CHECK(even4.blocks[0].dimension == 4);
  CHECK(even4.blocks[1].dimension == 4);
  CHECK(even4.blocks[0].dimension + even4.blocks[1].dimension + even4.radical_dimension ==
        even4.dimension);

  // radical vanishes for every nondegenerate gram
  Rng rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    Index n = 2 + rng.below(3);
    QMatrix g = random_symmetric(rng, n);
    if (rank_bareiss(g) != n) continue;
    CliffordAlgebra a(n, g);
    CHECK(structure_report(a, Subalgebra::FULL).radical_dimension == 0);
    CHECK(structure_report(a, Subalgebra::EVEN).radical_dimension == 0);
  }
}

TEST_CASE("quotient by the central element") {
  QMatrix g110(3, 3);
  g110.setZero();
  g110(0, 0) = 1;
  g110(1, 1) = 1;
  QuotientReport q1 = quotient_by_d(CliffordAlgebra(3, g110), Subalgebra::FULL);
  CHECK(q1.quotient_dimension == 4);
  CHECK(q1.structure.kind == AlgebraStructureReport::Kind::CENTRAL_SIMPLE);
  CHECK(q1.structure.degree == 2);

  // hyperbolic restriction splits over Q: exhibit a nontrivial idempotent
  QMatrix gh(3, 3);
  gh.setZero();
  gh(0, 0) = 1;
  gh(1, 1) = -1;
  QuotientReport q2 = quotient_by_d(CliffordAlgebra(3, gh), Subalgebra::FULL);
  CHECK(q2.quotient_dimension == 4);
  CHECK(q2.structure.kind == AlgebraStructureReport::Kind::CENTRAL_SIMPLE);
  {
    // (1 + e1)/2 squares to itself in the restricted algebra B(diag(1,-1))
    QMatrix res(2, 2);
    res.setZero();
    res(0, 0) = 1;
    res(1, 1) = -1;
    CliffordAlgebra a(2, res);
    CliffordElement idem = a.scalar_element(Rational(1, 2)) + monomial(0b01, Rational(1, 2));
    CHECK(a.multiply(idem, idem) == idem);
  }

  QMatrix g1110(4, 4);
  g1110.setZero();
  g1110(0, 0) = g1110(1, 1) = g1110(2, 2) = 1;
  QuotientReport q3 = quotient_by_d(CliffordAlgebra(4, g1110), Subalgebra::EVEN);
  CHECK(q3.quotient_dimension == 4);
  CHECK(q3.structure.kind == AlgebraStructureReport::Kind::CENTRAL_SIMPLE);
  CHECK(q3.structure.degree == 2);

  CHECK_THROWS_AS(quotient_by_d(CliffordAlgebra(3, QMatrix::Identity(3, 3)), Subalgebra::FULL),
                  input_error);
  CHECK_THROWS_AS(quotient_by_d(CliffordAlgebra(3, g110), Subalgebra::EVEN), input_error);
}

TEST_CASE("element text form round trips") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    CliffordElement e = random_element(rng, 4, 4);
    CHECK(parse_element(print_element(e), 4) == e);
  }
  CliffordElement e = parse_element("1 + 2*e1e3 - 1/2*e2", 3);
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(0b101) == 2);
  CHECK(e.coeff(0b010) == Rational(-1, 2));
  CHECK(print_element(e) == "1 - 1/2*e2 + 2*e1e3");
  CHECK_THROWS_AS(parse_element("e9", 3), input_error);
}
