#include "cliffib/quadratic_form.hpp"

#include "cliffib/linalg.hpp"

#include <sstream>

namespace cliffib {

QuadraticForm QuadraticForm::create(Index n, std::vector<std::string> base_vars,
                                    PolyMatrix gram) {
  if (n < 1) throw input_error("BAD_N", "generator count must be >= 1");
  if (gram.rows() != n || gram.cols() != n)
    throw input_error("BAD_GRAM", "gram matrix must be n x n");
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i)) {
        std::ostringstream msg;
        msg << "gram matrix is not symmetric: entry (" << i << "," << j << ") = "
            << gram(i, j).print() << " but (" << j << "," << i << ") = "
            << gram(j, i).print();
        throw input_error("ASYMMETRIC_GRAM", msg.str());
      }
  QuadraticForm q;
  q.n = n;
  q.base_vars = std::move(base_vars);
  q.gram = std::move(gram);
  return q;
}

QMatrix QuadraticForm::gram_at(const std::vector<Rational>& point) const {
  if (point.size() != base_vars.size())
    throw input_error("POINT_LENGTH", "specialization point must list one value per base parameter");
  return evaluate_matrix(gram, point);
}

Rational QuadraticForm::value(const QMatrix& g, const QVector& v) {
  return (v.transpose() * g * v)(0, 0);
}

MultiPoly discriminant(const QuadraticForm& q) { return det_poly(q.gram); }

Index corank_at(const QuadraticForm& q, const std::vector<Rational>& point) {
  return q.n - rank_bareiss(q.gram_at(point));
}

std::vector<MultiPoly> degeneration_ideal(const QuadraticForm& q, Index d) {
  if (d < 1 || d > q.n) throw input_error("BAD_LEVEL", "degeneration level must satisfy 1 <= d <= n");
  return minors(q.gram, q.n + 1 - d, /*deduplicate=*/true);
}

Orthogonalization orthogonalize(const QMatrix& g0) {
  const Index n = g0.rows();
  QMatrix g = g0;
  QMatrix p = QMatrix::Identity(n, n);
  // symmetric elimination; congruence transformations applied to both sides
  auto add_col = [&](Index dst, Index src, const Rational& f) {
    g.col(dst) += f * g.col(src);
    g.row(dst) += f * g.row(src);
    p.col(dst) += f * p.col(src);
  };
  auto swap_cols = [&](Index a, Index b) {
    g.col(a).swap(g.col(b));
    g.row(a).swap(g.row(b));
    p.col(a).swap(p.col(b));
  };
  for (Index i = 0; i < n; ++i) {
    if (is_zero(g(i, i))) {
      Index pivot = -1;
      for (Index j = i + 1; j < n && pivot < 0; ++j)
        if (!is_zero(g(j, j))) pivot = j;
      if (pivot >= 0) {
        swap_cols(i, pivot);
      } else {
        // all remaining diagonal entries vanish; an off-diagonal entry
        // g(i,j) != 0 gives g(i,i) = 2 g(i,j) after adding column j
        Index j = -1;
        for (Index a = i; a < n && j < 0; ++a)
          for (Index b = a + 1; b < n && j < 0; ++b)
            if (!is_zero(g(a, b))) {
              if (a != i) swap_cols(i, a);
              j = b;
            }
        if (j < 0) break;  // remaining block is zero
        add_col(i, j, 1);
      }
    }
    const Rational pivot = g(i, i);
    for (Index j = i + 1; j < n; ++j)
      if (!is_zero(g(i, j))) add_col(j, i, -g(i, j) / pivot);
  }
  // zero diagonal values go last (stable)
  std::vector<Index> order;
  for (Index i = 0; i < n; ++i)
    if (!is_zero(g(i, i))) order.push_back(i);
  for (Index i = 0; i < n; ++i)
    if (is_zero(g(i, i))) order.push_back(i);
  Orthogonalization out;
  out.basis_change = QMatrix(n, n);
  for (Index k = 0; k < n; ++k) {
    out.diagonal.push_back(g(order[k], order[k]));
    out.basis_change.col(k) = p.col(order[k]);
  }
  return out;
}

Orthogonalization orthogonalize_at(const QuadraticForm& q, const std::vector<Rational>& point) {
  return orthogonalize(q.gram_at(point));
}

std::optional<QVector> find_isotropic(const QMatrix& g) {
  const Index n = g.rows();
  Orthogonalization o = orthogonalize(g);
  for (Index i = 0; i < n; ++i)
    if (is_zero(o.diagonal[i])) return QVector(o.basis_change.col(i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Rational ratio = -o.diagonal[i] / o.diagonal[j];
      if (sgn(ratio) <= 0) continue;
      // a_i + t^2 a_j = 0 has a rational t iff -a_i/a_j is a square
      Integer num_root, den_root;
      if (mpz_perfect_square_p(ratio.get_num_mpz_t()) &&
          mpz_perfect_square_p(ratio.get_den_mpz_t())) {
        mpz_sqrt(num_root.get_mpz_t(), ratio.get_num_mpz_t());
        mpz_sqrt(den_root.get_mpz_t(), ratio.get_den_mpz_t());
        Rational t(num_root, den_root);
        t.canonicalize();
        QVector v = o.basis_change.col(i) + t * o.basis_change.col(j);
        if (!is_zero(QuadraticForm::value(g, v)))
          throw invariant_error("isotropic candidate fails q(v) = 0");
        return v;
      }
    }
  return std::nullopt;
}

std::optional<QVector> find_isotropic(const QuadraticForm& q, const std::vector<Rational>& point) {
  return find_isotropic(q.gram_at(point));
}

std::optional<bool> discriminant_squarefree(const QuadraticForm& q, std::string* witness) {
  MultiPoly disc = discriminant(q);
  const size_t nv = q.base_vars.size();
  if (nv == 0) {
    if (witness) *witness = "constant discriminant";
    return !disc.is_zero();
  }
  if (nv > 2) {
    if (witness) *witness = "not verified: no exact squarefreeness test for bases of dimension >= 3";
    return std::nullopt;
  }
  if (disc.is_zero()) {
    if (witness) *witness = "discriminant vanishes identically";
    return false;
  }
  for (size_t v = 0; v < nv; ++v) {
    MultiPoly dd = disc.derivative(v);
    if (dd.is_zero()) continue;
    // substitute 1 for the other variable: a binary form f is squarefree iff
    // f(s,1) is squarefree and t divides f at most once
    MultiPoly f = disc, g = dd;
    if (nv == 2) {
      size_t other = 1 - v;
      std::vector<Rational> ones;
      auto dehomogenize = [&](const MultiPoly& p) {
        MultiPoly out = MultiPoly::zero(q.base_vars);
        for (const auto& [m, c] : p.terms()) {
          Monomial mm(m);
          mm[other] = 0;
          out += MultiPoly::monomial(q.base_vars, mm, c);
        }
        return out;
      };
      f = dehomogenize(disc);
      g = dehomogenize(dd);
      unsigned t_mult = disc.degree() - f.degree();
      if (t_mult >= 2) {
        if (witness) *witness = "discriminant divisible by " + q.base_vars[other] + "^2";
        return false;
      }
      if (g.is_zero()) continue;
    }
    MultiPoly common = gcd_univariate(f, g, v);
    bool sf = common.degree() == 0;
    if (witness)
      *witness = sf ? "gcd(disc, d disc/d " + q.base_vars[v] + ") = 1"
                    : "repeated factor: gcd(disc, d disc/d " + q.base_vars[v] + ") = " + common.print();
    return sf;
  }
  if (witness) *witness = "all partial derivatives vanish";
  return false;
}

StrataReport strata_report(const QuadraticForm& q, Index max_level) {
  StrataReport out;
  out.discriminant = discriminant(q);
  for (Index d = 1; d <= std::min(max_level, q.n); ++d)
    out.corank_ideals.push_back(degeneration_ideal(q, d));
  out.simple_degenerations = discriminant_squarefree(q, &out.witness);
  return out;
}

}  // namespace cliffib
