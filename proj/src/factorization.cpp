#include "cliffib/factorization.hpp"

#include "cliffib/linalg.hpp"

#include <algorithm>
#include <map>

namespace cliffib {

namespace {

std::vector<std::string> fiber_names(Index n) {
  std::vector<std::string> v;
  for (Index i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

// per-generator multiplication matrices between the parity parts
template <class Scalar>
std::vector<DenseMatrix<Scalar>> generator_maps(const CliffordAlgebraT<Scalar>& alg, Side side,
                                                Parity source) {
  const Index n = alg.n();
  const int src = source == Parity::EVEN ? 0 : 1;
  auto source_basis = subset_basis(n, src);
  auto target_basis = subset_basis(n, 1 - src);
  std::map<Subset, Index> tindex;
  for (Index i = 0; i < static_cast<Index>(target_basis.size()); ++i)
    tindex[target_basis[i]] = i;
  std::vector<DenseMatrix<Scalar>> out;
  for (Index g = 0; g < n; ++g) {
    DenseMatrix<Scalar> m(static_cast<Index>(target_basis.size()),
                          static_cast<Index>(source_basis.size()));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = Scalar(0);
    for (Index c = 0; c < static_cast<Index>(source_basis.size()); ++c) {
      auto prod = side == Side::LEFT
                      ? alg.monomial_product(Subset(1) << g, source_basis[c])
                      : alg.monomial_product(source_basis[c], Subset(1) << g);
      for (const auto& [s, v] : prod.coeffs) m(tindex.at(s), c) = v;
    }
    out.push_back(std::move(m));
  }
  return out;
}

// hand-rolled product: Eigen's gemm kernels are not exercised with the
// polynomial scalar
template <class Scalar>
DenseMatrix<Scalar> mat_mul(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Scalar acc(0);
      for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

// psi phi = q Id as coefficient-matrix identities: the x_i x_j coefficient
// of the product must be G_ij Id (twice that off the diagonal)
template <class Scalar>
void verify_product_identity(const std::vector<DenseMatrix<Scalar>>& phi_gen,
                             const std::vector<DenseMatrix<Scalar>>& psi_gen,
                             const DenseMatrix<Scalar>& gram) {
  const Index n = gram.rows();
  const Index half = phi_gen[0].cols();
  auto check = [&](const std::vector<DenseMatrix<Scalar>>& a,
                   const std::vector<DenseMatrix<Scalar>>& b) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        DenseMatrix<Scalar> coeff = mat_mul(b[i], a[j]);
        if (i != j) {
          DenseMatrix<Scalar> other = mat_mul(b[j], a[i]);
          for (Index r = 0; r < half; ++r)
            for (Index c = 0; c < half; ++c) coeff(r, c) += other(r, c);
        }
        Scalar expect = (i == j) ? gram(i, i) : Scalar(gram(i, j) + gram(i, j));
        for (Index r = 0; r < half; ++r)
          for (Index c = 0; c < half; ++c) {
            Scalar want = (r == c) ? expect : Scalar(0);
            if (!(coeff(r, c) == want))
              throw invariant_error("matrix factorization identity failed");
          }
      }
  };
  check(phi_gen, psi_gen);  // psi phi on the even part
  check(psi_gen, phi_gen);  // phi psi on the odd part
}

template <class Scalar>
MultiPoly form_polynomial(const DenseMatrix<Scalar>& gram, const std::vector<std::string>& vars,
                          Index base_count);

template <>
MultiPoly form_polynomial(const QMatrix& gram, const std::vector<std::string>& vars,
                          Index base_count) {
  const Index n = gram.rows();
  MultiPoly q = MultiPoly::zero(vars);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (is_zero(gram(i, j))) continue;
      Monomial m(vars.size(), 0);
      m[static_cast<size_t>(base_count + i)]++;
      m[static_cast<size_t>(base_count + j)]++;
      q += MultiPoly::monomial(vars, m, gram(i, j));
    }
  return q;
}

template <>
MultiPoly form_polynomial(const PolyMatrix& gram, const std::vector<std::string>& vars,
                          Index base_count) {
  const Index n = gram.rows();
  MultiPoly q = MultiPoly::zero(vars);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (gram(i, j).is_zero()) continue;
      for (const auto& [bm, c] : gram(i, j).terms()) {
        Monomial m(vars.size(), 0);
        for (size_t v = 0; v < bm.size(); ++v) m[v] = bm[v];
        m[static_cast<size_t>(base_count + i)]++;
        m[static_cast<size_t>(base_count + j)]++;
        q += MultiPoly::monomial(vars, m, c);
      }
    }
  return q;
}

template <class Scalar>
PolyMatrix assemble_linear(const std::vector<DenseMatrix<Scalar>>& gen,
                           const std::vector<std::string>& vars, Index base_count);

template <>
PolyMatrix assemble_linear(const std::vector<QMatrix>& gen, const std::vector<std::string>& vars,
                           Index base_count) {
  const Index rows = gen[0].rows(), cols = gen[0].cols();
  PolyMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      MultiPoly e = MultiPoly::zero(vars);
      for (size_t g = 0; g < gen.size(); ++g) {
        if (is_zero(gen[g](r, c))) continue;
        Monomial m(vars.size(), 0);
        m[base_count + g]++;
        e += MultiPoly::monomial(vars, m, gen[g](r, c));
      }
      out(r, c) = std::move(e);
    }
  return out;
}

template <>
PolyMatrix assemble_linear(const std::vector<PolyMatrix>& gen,
                           const std::vector<std::string>& vars, Index base_count) {
  const Index rows = gen[0].rows(), cols = gen[0].cols();
  PolyMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      MultiPoly e = MultiPoly::zero(vars);
      for (size_t g = 0; g < gen.size(); ++g) {
        if (gen[g](r, c).is_zero()) continue;
        // constant coefficients live in an empty variable context
        const MultiPoly entry = promote(gen[g](r, c), vars);
        for (const auto& [bm, cf] : entry.terms()) {
          Monomial m(bm);
          m[base_count + g]++;
          e += MultiPoly::monomial(vars, m, cf);
        }
      }
      out(r, c) = std::move(e);
    }
  return out;
}

}  // namespace

MatrixFactorization build_factorization(const QMatrix& gram, Side side) {
  const Index n = gram.rows();
  CliffordAlgebra alg(n, gram);
  auto phi_gen = generator_maps(alg, side, Parity::EVEN);
  auto psi_gen = generator_maps(alg, side, Parity::ODD);
  verify_product_identity(phi_gen, psi_gen, gram);
  MatrixFactorization out;
  out.n = n;
  out.side = side;
  out.vars = fiber_names(n);
  out.phi = assemble_linear(phi_gen, out.vars, 0);
  out.psi = assemble_linear(psi_gen, out.vars, 0);
  out.q = form_polynomial(gram, out.vars, 0);
  return out;
}

MatrixFactorization build_factorization(const QuadraticForm& form, Side side) {
  if (form.point_base()) {
    QMatrix g(form.n, form.n);
    for (Index i = 0; i < form.n; ++i)
      for (Index j = 0; j < form.n; ++j) g(i, j) = form.gram(i, j).constant_value();
    return build_factorization(g, side);
  }
  std::vector<std::string> vars = form.base_vars;
  for (const std::string& x : fiber_names(form.n)) {
    if (std::find(vars.begin(), vars.end(), x) != vars.end())
      throw input_error("VAR_CLASH", "base parameter name collides with fiber coordinate " + x);
    vars.push_back(x);
  }
  const Index base_count = static_cast<Index>(form.base_vars.size());
  PolyMatrix gram_joint(form.n, form.n);
  for (Index i = 0; i < form.n; ++i)
    for (Index j = 0; j < form.n; ++j) {
      MultiPoly e = MultiPoly::zero(vars);
      for (const auto& [m, c] : form.gram(i, j).terms()) {
        Monomial mm(vars.size(), 0);
        for (size_t v = 0; v < m.size(); ++v) mm[v] = m[v];
        e += MultiPoly::monomial(vars, mm, c);
      }
      gram_joint(i, j) = std::move(e);
    }
  CliffordAlgebraPoly alg(form.n, gram_joint);
  auto phi_gen = generator_maps(alg, side, Parity::EVEN);
  auto psi_gen = generator_maps(alg, side, Parity::ODD);
  verify_product_identity(phi_gen, psi_gen, gram_joint);
  MatrixFactorization out;
  out.n = form.n;
  out.side = side;
  out.vars = vars;
  out.base_vars = form.base_vars;
  out.phi = assemble_linear(phi_gen, vars, base_count);
  out.psi = assemble_linear(psi_gen, vars, base_count);
  out.q = form_polynomial(gram_joint, vars, base_count);
  return out;
}

MatrixFactorization specialize_base(const MatrixFactorization& mf,
                                    const std::vector<Rational>& base_point) {
  if (base_point.size() != mf.base_vars.size())
    throw input_error("POINT_LENGTH", "base specialization point has wrong length");
  if (mf.base_vars.empty()) return mf;
  MatrixFactorization out;
  out.n = mf.n;
  out.side = mf.side;
  out.vars = fiber_names(mf.n);
  auto specialize = [&](const MultiPoly& p) {
    MultiPoly r = MultiPoly::zero(out.vars);
    const size_t bc = mf.base_vars.size();
    for (const auto& [m, c] : p.terms()) {
      Rational coeff = c;
      for (size_t v = 0; v < bc; ++v)
        for (unsigned e = 0; e < m[v]; ++e) coeff *= base_point[v];
      if (is_zero(coeff)) continue;
      Monomial mm(out.vars.size(), 0);
      for (size_t v = bc; v < m.size(); ++v) mm[v - bc] = m[v];
      r += MultiPoly::monomial(out.vars, mm, coeff);
    }
    return r;
  };
  out.phi = PolyMatrix(mf.phi.rows(), mf.phi.cols());
  out.psi = PolyMatrix(mf.psi.rows(), mf.psi.cols());
  for (Index i = 0; i < mf.phi.rows(); ++i)
    for (Index j = 0; j < mf.phi.cols(); ++j) {
      out.phi(i, j) = specialize(mf.phi(i, j));
      out.psi(i, j) = specialize(mf.psi(i, j));
    }
  out.q = specialize(mf.q);
  return out;
}

namespace {

QMatrix eval_fiber(const PolyMatrix& m, const QVector& point) {
  std::vector<Rational> pt;
  for (Index i = 0; i < point.size(); ++i) pt.push_back(point(i));
  return evaluate_matrix(m, pt);
}

}  // namespace

Index cokernel_rank_at(const MatrixFactorization& mf, const QVector& point) {
  if (!mf.base_vars.empty())
    throw input_error("BASE_NOT_SPECIALIZED", "specialize the base parameters first");
  if (point.size() != mf.n) throw input_error("POINT_LENGTH", "fiber point has wrong length");
  if (point.isZero()) throw input_error("ZERO_POINT", "the zero vector is not a point");
  std::vector<Rational> pt;
  for (Index i = 0; i < point.size(); ++i) pt.push_back(point(i));
  if (!is_zero(mf.q.evaluate(pt)))
    throw input_error("NOT_ON_QUADRIC", "q(point) != 0: " + mf.q.evaluate(pt).get_str());
  QMatrix at = eval_fiber(mf.phi, point);
  return at.rows() - rank_bareiss(at);
}

PeriodicityReport periodicity_check(const QMatrix& gram, const std::vector<QVector>& points) {
  MatrixFactorization left = build_factorization(gram, Side::LEFT);
  MatrixFactorization right = build_factorization(gram, Side::RIGHT);
  const Index expected = Index(1) << (gram.rows() - 2);
  PeriodicityReport rep;
  for (const QVector& v : points) {
    PeriodicityPoint pp;
    pp.point = v;
    std::vector<Rational> pt;
    for (Index i = 0; i < v.size(); ++i) pt.push_back(v(i));
    if (v.isZero() || !is_zero(left.q.evaluate(pt)))
      throw input_error("NOT_ON_QUADRIC", "periodicity samples must be nonzero isotropic points");
    QVector gv = gram * v;
    pp.vertex = gv.isZero();
    auto coker = [&](const PolyMatrix& m) {
      QMatrix at = eval_fiber(m, v);
      return at.rows() - rank_bareiss(at);
    };
    pp.coker_phi = coker(left.phi);
    pp.coker_psi = coker(left.psi);
    pp.coker_phi_other = coker(right.phi);
    pp.coker_psi_other = coker(right.psi);
    bool equal = pp.coker_phi == pp.coker_psi && pp.coker_phi == pp.coker_phi_other &&
                 pp.coker_phi == pp.coker_psi_other;
    rep.all_equal = rep.all_equal && equal;
    if (!pp.vertex) rep.all_expected = rep.all_expected && (pp.coker_phi == expected) && equal;
    rep.points.push_back(std::move(pp));
  }
  return rep;
}

DeterminantCheck determinant_identity_check(const MatrixFactorization& mf, Rng& rng,
                                            Index sample_points) {
  DeterminantCheck out;
  const Index half = mf.phi.rows();
  if (mf.n <= 4 && mf.base_vars.empty()) {
    out.full_poly = true;
    MultiPoly dp = det_poly(mf.phi), dq = det_poly(mf.psi);
    out.identity_holds = (dp * dq == mf.q.pow(static_cast<unsigned>(half)));
    return out;
  }
  // identity follows from psi phi = q Id (verified at construction) by
  // multiplicativity; spot-check by exact evaluation
  out.identity_holds = true;
  out.sample_points = sample_points;
  for (Index t = 0; t < sample_points; ++t) {
    std::vector<Rational> pt;
    for (size_t v = 0; v < mf.vars.size(); ++v) pt.emplace_back(rng.integer(50));
    QMatrix phi_at(half, half), psi_at(half, half);
    for (Index i = 0; i < half; ++i)
      for (Index j = 0; j < half; ++j) {
        phi_at(i, j) = mf.phi(i, j).evaluate(pt);
        psi_at(i, j) = mf.psi(i, j).evaluate(pt);
      }
    Rational lhs = det_bareiss(phi_at) * det_bareiss(psi_at);
    Rational qv = mf.q.evaluate(pt);
    Rational rhs = 1;
    for (Index e = 0; e < half; ++e) rhs *= qv;
    if (lhs != rhs) out.identity_holds = false;
  }
  return out;
}

}  // namespace cliffib
