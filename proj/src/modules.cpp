#include "cliffib/modules.hpp"

#include "cliffib/linalg.hpp"
#include "cliffib/presentation.hpp"

#include <map>

namespace cliffib {

B0Module build_Bk(std::shared_ptr<const CliffordAlgebra> algebra, int k) {
  const Index n = algebra->n();
  B0Module out;
  out.algebra = algebra;
  out.twist = k;
  const int part = ((k % 2) + 2) % 2;
  out.basis = subset_basis(n, part);
  out.space_dim = static_cast<Index>(out.basis.size());
  std::map<Subset, Index> part_index;
  for (Index i = 0; i < out.space_dim; ++i) part_index[out.basis[i]] = i;

  auto even = subset_basis(n, 0);
  std::map<Subset, Index> even_index;
  for (Index i = 0; i < static_cast<Index>(even.size()); ++i) even_index[even[i]] = i;

  for (Subset b : even) {
    QMatrix right = QMatrix::Zero(out.space_dim, out.space_dim);
    QMatrix left = QMatrix::Zero(out.space_dim, out.space_dim);
    for (Index c = 0; c < out.space_dim; ++c) {
      CliffordElement r = algebra->monomial_product(out.basis[c], b);
      for (const auto& [s, v] : r.coeffs) right(part_index.at(s), c) = v;
      CliffordElement l = algebra->monomial_product(b, out.basis[c]);
      for (const auto& [s, v] : l.coeffs) left(part_index.at(s), c) = v;
    }
    out.right_action.push_back(std::move(right));
    out.left_action.push_back(std::move(left));
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      out.generator_indices.push_back(even_index.at((Subset(1) << i) | (Subset(1) << j)));
  return out;
}

bool action_consistent(const B0Module& m, Rng& rng, int random_pairs) {
  const Index dim = m.space_dim;
  auto even = subset_basis(m.algebra->n(), 0);
  const Index edim = static_cast<Index>(even.size());
  // unit acts as identity
  if (m.right_action[0] != QMatrix::Identity(dim, dim)) return false;
  // associativity m·(b b') = (m·b)·b' on random basis pairs
  for (int t = 0; t < random_pairs; ++t) {
    Index i = static_cast<Index>(rng.below(static_cast<std::uint64_t>(edim)));
    Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(edim)));
    CliffordElement prod = m.algebra->monomial_product(even[i], even[j]);
    QMatrix expected = QMatrix::Zero(dim, dim);
    std::map<Subset, Index> even_index;
    for (Index k = 0; k < edim; ++k) even_index[even[k]] = k;
    for (const auto& [s, c] : prod.coeffs) expected += c * m.right_action[even_index.at(s)];
    if (m.right_action[j] * m.right_action[i] != expected) return false;
  }
  return true;
}

TensorResult tensor_over_B0(const B0Module& m, const B0Module& n, Rng& rng,
                            bool find_expected_twist) {
  if (m.algebra.get() != n.algebra.get())
    throw input_error("ALGEBRA_MISMATCH", "tensor factors live over different algebras");
  const Index dm = m.space_dim, dn = n.space_dim;
  const Index amb = dm * dn;

  // coequalizer relations (m·b)⊗n - m⊗(b·n) for the pair generators; the
  // relations of products are combinations of these
  std::vector<QVector> rows;
  std::vector<Index> pivots;
  auto insert = [&](QVector v) {
    for (size_t r = 0; r < rows.size(); ++r)
      if (!is_zero(v(pivots[r]))) v -= v(pivots[r]) * rows[r];
    Index pc = -1;
    for (Index i = 0; i < amb && pc < 0; ++i)
      if (!is_zero(v(i))) pc = i;
    if (pc < 0) return;
    v /= v(pc);
    for (size_t r = 0; r < rows.size(); ++r)
      if (!is_zero(rows[r](pc))) rows[r] -= rows[r](pc) * v;
    rows.push_back(std::move(v));
    pivots.push_back(pc);
  };
  for (Index g : m.generator_indices) {
    const QMatrix& mg = m.right_action[g];
    const QMatrix& ng = n.left_action[g];
    for (Index i = 0; i < dm; ++i)
      for (Index j = 0; j < dn; ++j) {
        QVector v = QVector::Zero(amb);
        for (Index a = 0; a < dm; ++a)
          if (!is_zero(mg(a, i))) v(a * dn + j) += mg(a, i);
        for (Index b = 0; b < dn; ++b)
          if (!is_zero(ng(b, j))) v(i * dn + b) -= ng(b, j);
        insert(std::move(v));
      }
  }

  std::vector<bool> is_pivot(amb, false);
  std::map<Index, Index> pivot_row;
  for (size_t r = 0; r < rows.size(); ++r) {
    is_pivot[pivots[r]] = true;
    pivot_row[pivots[r]] = static_cast<Index>(r);
  }
  std::vector<Index> free_coords;
  for (Index i = 0; i < amb; ++i)
    if (!is_pivot[i]) free_coords.push_back(i);
  const Index qdim = static_cast<Index>(free_coords.size());

  auto reduce = [&](QVector v) {
    for (Index i = 0; i < amb; ++i) {
      if (is_zero(v(i)) || !is_pivot[i]) continue;
      v -= v(i) * rows[static_cast<size_t>(pivot_row.at(i))];
    }
    QVector q(qdim);
    for (Index k = 0; k < qdim; ++k) q(k) = v(free_coords[k]);
    return q;
  };

  TensorResult out;
  out.dimension = qdim;
  out.module.algebra = m.algebra;
  out.module.space_dim = qdim;
  out.module.twist = m.twist + n.twist;
  out.module.generator_indices = m.generator_indices;

  const Index edim = static_cast<Index>(n.right_action.size());
  for (Index g = 0; g < edim; ++g) {
    QMatrix right = QMatrix::Zero(qdim, qdim);
    QMatrix left = QMatrix::Zero(qdim, qdim);
    for (Index c = 0; c < qdim; ++c) {
      Index i = free_coords[c] / dn, j = free_coords[c] % dn;
      // right action through the N factor, left action through the M factor
      QVector vr = QVector::Zero(amb);
      for (Index b = 0; b < dn; ++b)
        if (!is_zero(n.right_action[g](b, j))) vr(i * dn + b) = n.right_action[g](b, j);
      right.col(c) = reduce(std::move(vr));
      QVector vl = QVector::Zero(amb);
      for (Index a = 0; a < dm; ++a)
        if (!is_zero(m.left_action[g](a, i))) vl(a * dn + j) = m.left_action[g](a, i);
      left.col(c) = reduce(std::move(vl));
    }
    out.module.right_action.push_back(std::move(right));
    out.module.left_action.push_back(std::move(left));
  }

  if (find_expected_twist) {
    B0Module target = build_Bk(m.algebra, m.twist + n.twist);
    if (target.space_dim == qdim) {
      HomResult hom = hom_over_B0(out.module, target);
      for (int trial = 0; trial < 32 && !out.isomorphism; ++trial) {
        QMatrix cand = QMatrix::Zero(target.space_dim, qdim);
        for (const QMatrix& h : hom.basis) cand += Rational(rng.integer(9)) * h;
        if (!is_zero(det_bareiss(cand))) {
          out.isomorphism = cand;
          out.isomorphism_verified = true;
          for (Index g : out.module.generator_indices)
            if (cand * out.module.right_action[g] != target.right_action[g] * cand)
              out.isomorphism_verified = false;
        }
      }
    }
  }
  return out;
}

HomResult hom_over_B0(const B0Module& m, const B0Module& n) {
  if (m.algebra.get() != n.algebra.get())
    throw input_error("ALGEBRA_MISMATCH", "hom over different algebras");
  const Index dm = m.space_dim, dn = n.space_dim;
  // unknown phi (dn x dm), constraints phi R^M_g = R^N_g phi per generator
  const Index unknowns = dn * dm;
  QMatrix sys(static_cast<Index>(m.generator_indices.size()) * unknowns, unknowns);
  sys.setZero();
  Index row0 = 0;
  for (Index g : m.generator_indices) {
    const QMatrix& rm = m.right_action[g];
    const QMatrix& rn = n.right_action[g];
    // row (a, b): sum_c phi(a,c) rm(c,b) - sum_c rn(a,c) phi(c,b) = 0
    for (Index a = 0; a < dn; ++a)
      for (Index b = 0; b < dm; ++b) {
        Index row = row0 + a * dm + b;
        for (Index c = 0; c < dm; ++c)
          if (!is_zero(rm(c, b))) sys(row, a * dm + c) += rm(c, b);
        for (Index c = 0; c < dn; ++c)
          if (!is_zero(rn(a, c))) sys(row, c * dm + b) -= rn(a, c);
      }
    row0 += unknowns;
  }
  HomResult out;
  for (const QVector& v : kernel_basis(sys)) {
    QMatrix phi(dn, dm);
    for (Index a = 0; a < dn; ++a)
      for (Index b = 0; b < dm; ++b) phi(a, b) = v(a * dm + b);
    out.basis.push_back(std::move(phi));
  }
  out.dimension = static_cast<Index>(out.basis.size());
  return out;
}

TwistIdentityReport determinant_twist_identity(Index n, long k) {
  if (k > 1)
    throw input_error("PRECONDITION", "the determinant twist identity needs k <= 1");
  TwistIdentityReport out;
  out.n = n;
  out.k = k;
  out.dim_bk = Integer(1) << (n - 1);
  out.dim_fb = clifford_graded_dim(n, static_cast<Index>(n - k));
  out.equal = (out.dim_bk == out.dim_fb);
  // parity part of B_k lists Lambda^p for p ≡ k (mod 2); complement matches
  // the dual factors Lambda^{n-p}
  const int par = static_cast<int>(((k % 2) + 2) % 2);
  for (Index p = par; p <= n; p += 2) out.factor_pairs.emplace_back(p, n - p);
  return out;
}

bool is_projective_over_B0(const B0Module& m) {
  const Index dm = m.space_dim;
  const Index db = static_cast<Index>(m.right_action.size());  // dim of the even part
  // free cover F = (B0)^{dm}, pi(i, b) = m_i . b; a right-linear section s
  // with pi s = id exists iff M is projective
  // unknowns: s as (dm*db) x dm matrix entries
  const Index fdim = dm * db;
  const Index unknowns = fdim * dm;
  Index rows = static_cast<Index>(m.generator_indices.size()) * fdim * dm + dm * dm;
  QMatrix sys = QMatrix::Zero(rows, unknowns);
  QVector rhs = QVector::Zero(rows);

  // B0 right action on itself in the even basis
  std::vector<QMatrix> breg;
  {
    auto even = subset_basis(m.algebra->n(), 0);
    std::map<Subset, Index> idx;
    for (Index i = 0; i < db; ++i) idx[even[i]] = i;
    for (Index g = 0; g < db; ++g) {
      QMatrix mat = QMatrix::Zero(db, db);
      for (Index c = 0; c < db; ++c) {
        CliffordElement p = m.algebra->monomial_product(even[c], even[g]);
        for (const auto& [s, v] : p.coeffs) mat(idx.at(s), c) = v;
      }
      breg.push_back(std::move(mat));
    }
  }

  Index row0 = 0;
  // right-linearity: s(x·g) = s(x)·g for the pair generators
  for (Index g : m.generator_indices) {
    const QMatrix& rm = m.right_action[g];
    const QMatrix& rf = breg[g];  // acts on each free summand's B0 factor
    for (Index f = 0; f < fdim; ++f)
      for (Index x = 0; x < dm; ++x) {
        Index row = row0 + f * dm + x;
        for (Index c = 0; c < dm; ++c)
          if (!is_zero(rm(c, x))) sys(row, f * dm + c) += rm(c, x);
        const Index i = f / db, b = f % db;
        for (Index c = 0; c < db; ++c)
          if (!is_zero(rf(b, c))) sys(row, (i * db + c) * dm + x) -= rf(b, c);
      }
    row0 += fdim * dm;
  }
  // pi s = id: pi(i, b) = m_i . b
  for (Index x = 0; x < dm; ++x)
    for (Index out_c = 0; out_c < dm; ++out_c) {
      Index row = row0 + x * dm + out_c;
      for (Index i = 0; i < dm; ++i)
        for (Index b = 0; b < db; ++b) {
          const Rational& v = m.right_action[b](out_c, i);
          if (!is_zero(v)) sys(row, (i * db + b) * dm + x) += v;
        }
      rhs(row) = (x == out_c) ? 1 : 0;
    }
  return solve(sys, rhs).has_value();
}

}  // namespace cliffib
