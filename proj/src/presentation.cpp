#include "cliffib/presentation.hpp"

#include "cliffib/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace cliffib {

QuadraticPresentation make_presentation(Index gen_dim, const QMatrix& relations) {
  if (gen_dim < 1) throw input_error("BAD_GEN_DIM", "generator space must be positive dimensional");
  if (relations.rows() != gen_dim * gen_dim)
    throw input_error("BAD_RELATIONS", "relation vectors must live in the tensor square");
  QuadraticPresentation p;
  p.gen_dim = gen_dim;
  // reduce to an independent set, keeping the span
  Rref e = rref(QMatrix(relations.transpose()));
  p.relations = QMatrix(gen_dim * gen_dim, e.rank());
  for (Index r = 0; r < e.rank(); ++r) p.relations.col(r) = e.mat.row(r).transpose();
  return p;
}

QuadraticPresentation build_A_sigma(const QMatrix& gram) {
  const Index n = gram.rows();
  if (n != gram.cols() || n < 1) throw input_error("BAD_GRAM", "gram matrix must be square");
  bool zero = true;
  for (Index i = 0; i < n && zero; ++i)
    for (Index j = 0; j < n; ++j)
      if (!is_zero(gram(i, j))) { zero = false; break; }
  if (zero)
    throw input_error("SIGMA_ZERO", "the form vanishes; the relation span needs an embedding");
  const Index pairs = n * (n - 1) / 2;
  QMatrix rel = QMatrix::Zero(n * n, pairs + 1);
  Index c = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j, ++c) {
      rel(i * n + j, c) = 1;
      rel(j * n + i, c) = -1;
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rel(i * n + j, pairs) = gram(i, j);
  return make_presentation(n, rel);
}

QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
  QMatrix ann = kernel_matrix(QMatrix(p.relations.transpose()));
  return make_presentation(p.gen_dim, ann);
}

namespace {

void check_caps(Index g, Index degree, const TowerLimits& limits) {
  if (std::pow(static_cast<double>(g), static_cast<double>(degree)) > limits.tensor_cap)
    throw resource_error("degree cap: gen_dim^" + std::to_string(degree) +
                         " exceeds the configured tensor bound");
}

void finish_tower(Tower& t) {
  t.mu_t.clear();
  t.lmul_t.clear();
  for (const auto& m : t.mu) { SparseQ s = m; s.compress(); t.mu_t.push_back(transpose(s)); }
  for (const auto& m : t.lmul) { SparseQ s = m; s.compress(); t.lmul_t.push_back(transpose(s)); }
}

}  // namespace

Tower build_tower(const QuadraticPresentation& p, Index max_degree, const TowerLimits& limits) {
  const Index g = p.gen_dim;
  Tower t;
  t.g = g;
  t.dims = {1};
  t.mu.resize(1);
  t.iota.resize(1);
  t.lmul.resize(1);
  t.labels.push_back({"1"});
  if (max_degree == 0) { finish_tower(t); return t; }
  check_caps(g, max_degree, limits);

  // degree 1: A_1 = U
  t.dims.push_back(g);
  {
    SparseQ id(g, g);
    for (Index i = 0; i < g; ++i) id.add(i, i, 1);
    t.mu.push_back(id);
    t.iota.push_back(id);
    t.lmul[0] = id;  // U⊗A_0 -> A_1
  }

  // reduced row set for the current degree's relation span
  for (Index k = 2; k <= max_degree; ++k) {
    const Index prev = t.dims[k - 1], prev2 = t.dims[k - 2];
    const Index amb = prev * g;
    if (amb > limits.dim_cap) throw resource_error("graded dimension exceeds the configured cap");
    // span: images of A_{k-2} ⊗ R under mu_{k-1} ⊗ id
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
    const SparseQ& mu_prev = t.mu[k - 1];
    for (Index a = 0; a < prev2; ++a)
      for (Index r = 0; r < p.relations.cols(); ++r) {
        QVector v = QVector::Zero(amb);
        for (Index u1 = 0; u1 < g; ++u1) {
          // mu_{k-1} applied to (a, u1)
          for (const auto& [row, c] : mu_prev.col[static_cast<size_t>(a * g + u1)])
            for (Index u2 = 0; u2 < g; ++u2) {
              const Rational& rc = p.relations(u1 * g + u2, r);
              if (!is_zero(rc)) v(row * g + u2) += c * rc;
            }
        }
        insert(std::move(v));
      }
    // quotient coordinates = non-pivot coordinates
    std::vector<bool> is_pivot(amb, false);
    std::map<Index, Index> pivot_row;
    for (size_t r = 0; r < rows.size(); ++r) { is_pivot[pivots[r]] = true; pivot_row[pivots[r]] = static_cast<Index>(r); }
    std::vector<Index> free_coords;
    for (Index i = 0; i < amb; ++i)
      if (!is_pivot[i]) free_coords.push_back(i);
    const Index dk = static_cast<Index>(free_coords.size());
    std::map<Index, Index> free_index;
    for (Index i = 0; i < dk; ++i) free_index[free_coords[i]] = i;

    t.dims.push_back(dk);
    SparseQ mu_k(dk, amb), iota_k(amb, dk);
    for (Index i = 0; i < dk; ++i) iota_k.add(free_coords[i], i, 1);
    for (Index c = 0; c < amb; ++c) {
      if (!is_pivot[c]) {
        mu_k.add(free_index[c], c, 1);
      } else {
        const QVector& row = rows[static_cast<size_t>(pivot_row[c])];
        for (Index i = 0; i < amb; ++i)
          if (i != c && !is_zero(row(i))) {
            // reduced rows only touch free coordinates off the pivot
            mu_k.add(free_index.at(i), c, -row(i));
          }
      }
    }
    t.mu.push_back(std::move(mu_k));
    t.iota.push_back(std::move(iota_k));
  }

  // left multiplication, built on top of the quotient data
  t.lmul.resize(max_degree);
  for (Index k = 1; k + 1 <= max_degree; ++k) {
    const Index dk = t.dims[k], dk1 = t.dims[k + 1];
    SparseQ lm(dk1, g * dk);
    const SparseQ& lm_prev = t.lmul[k - 1];
    for (Index u = 0; u < g; ++u)
      for (Index b = 0; b < dk; ++b) {
        // lift b, multiply u into the A_{k-1} part, push back down
        for (const auto& [amb_coord, c1] : t.iota[k].col[static_cast<size_t>(b)]) {
          const Index a_prev = amb_coord / g, u2 = amb_coord % g;
          for (const auto& [a_mid, c2] : lm_prev.col[static_cast<size_t>(u * t.dims[k - 1] + a_prev)])
            for (const auto& [a_out, c3] : t.mu[k + 1].col[static_cast<size_t>(a_mid * g + u2)])
              lm.add(a_out, u * dk + b, c1 * c2 * c3);
        }
      }
    lm.compress();
    t.lmul[k] = std::move(lm);
  }

  // generic towers label coordinates positionally
  for (Index k = 1; k <= max_degree; ++k) {
    std::vector<std::string> lab;
    for (Index i = 0; i < t.dims[k]; ++i)
      lab.push_back("deg" + std::to_string(k) + "_" + std::to_string(i));
    t.labels.push_back(std::move(lab));
  }
  finish_tower(t);
  return t;
}

namespace {

// q(x) = x^T G x as a coefficient map on exponent pairs
struct SigmaNormalForm {
  Index n;
  Monomial lead;                       // grlex-leading monomial of q
  Rational lead_coeff;
  std::vector<std::pair<Monomial, Rational>> tail;  // q - lead, as monomials

  bool divides(const Monomial& lt, const Monomial& m) const {
    for (Index i = 0; i < n; ++i)
      if (lt[static_cast<size_t>(i)] > m[static_cast<size_t>(i)]) return false;
    return true;
  }

  // normal form of a monomial, recursively reducing by q
  void reduce(const Monomial& m, const Rational& coeff,
              std::map<Monomial, Rational, GrlexLess>& acc) const {
    if (!divides(lead, m)) {
      acc[m] += coeff;
      return;
    }
    Monomial rest(m);
    for (Index i = 0; i < n; ++i) rest[static_cast<size_t>(i)] -= lead[static_cast<size_t>(i)];
    for (const auto& [tm, tc] : tail) {
      Monomial prod(rest);
      for (Index i = 0; i < n; ++i) prod[static_cast<size_t>(i)] += tm[static_cast<size_t>(i)];
      reduce(prod, -coeff * tc / lead_coeff, acc);
    }
  }
};

std::vector<Monomial> monomials_of_degree(Index n, Index k) {
  std::vector<Monomial> out;
  Monomial m(static_cast<size_t>(n), 0);
  // lexicographic enumeration via recursion on the first variable
  std::function<void(Index, Index)> rec = [&](Index pos, Index left) {
    if (pos == n - 1) {
      m[static_cast<size_t>(pos)] = static_cast<unsigned>(left);
      out.push_back(m);
      return;
    }
    for (Index e = 0; e <= left; ++e) {
      m[static_cast<size_t>(pos)] = static_cast<unsigned>(e);
      rec(pos + 1, left - e);
    }
    m[static_cast<size_t>(pos)] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), GrlexLess());
  return out;
}

std::string monomial_label(const Monomial& m) {
  if (total_degree(m) == 0) return "1";
  std::ostringstream os;
  bool star = false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (star) os << "*";
    star = true;
    os << "x" << (i + 1);
    if (m[i] > 1) os << "^" << m[i];
  }
  return os.str();
}

}  // namespace

Tower build_sigma_tower(const QMatrix& gram, Index max_degree, const TowerLimits& limits) {
  const Index n = gram.rows();
  check_caps(n, max_degree, limits);
  // q(x) = sum G_ii x_i^2 + sum_{i<j} 2 G_ij x_i x_j
  std::map<Monomial, Rational, GrlexLess> q;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Rational c = (i == j) ? gram(i, i) : 2 * gram(i, j);
      if (is_zero(c)) continue;
      Monomial m(static_cast<size_t>(n), 0);
      m[static_cast<size_t>(i)]++;
      m[static_cast<size_t>(j)]++;
      q[m] += c;
    }
  if (q.empty()) throw input_error("SIGMA_ZERO", "the form vanishes");
  SigmaNormalForm nf;
  nf.n = n;
  nf.lead = q.rbegin()->first;
  nf.lead_coeff = q.rbegin()->second;
  for (const auto& [m, c] : q)
    if (!(m == nf.lead)) nf.tail.emplace_back(m, c);

  Tower t;
  t.g = n;
  std::vector<std::vector<Monomial>> basis(max_degree + 1);
  std::vector<std::map<Monomial, Index, GrlexLess>> index(max_degree + 1);
  for (Index k = 0; k <= max_degree; ++k) {
    for (const Monomial& m : monomials_of_degree(n, k))
      if (!nf.divides(nf.lead, m)) {
        index[k][m] = static_cast<Index>(basis[k].size());
        basis[k].push_back(m);
      }
    t.dims.push_back(static_cast<Index>(basis[k].size()));
    std::vector<std::string> lab;
    for (const Monomial& m : basis[k]) lab.push_back(monomial_label(m));
    t.labels.push_back(std::move(lab));
  }

  t.mu.resize(max_degree + 1);
  t.iota.resize(max_degree + 1);
  t.lmul.resize(std::max<Index>(max_degree, 1));
  for (Index k = 1; k <= max_degree; ++k) {
    const Index prev = t.dims[k - 1], dk = t.dims[k];
    SparseQ mu_k(dk, prev * n), iota_k(prev * n, dk), lm(dk, n * prev);
    for (Index a = 0; a < prev; ++a)
      for (Index u = 0; u < n; ++u) {
        Monomial m(basis[k - 1][static_cast<size_t>(a)]);
        m[static_cast<size_t>(u)]++;
        std::map<Monomial, Rational, GrlexLess> acc;
        nf.reduce(m, 1, acc);
        for (const auto& [mm, c] : acc) {
          if (is_zero(c)) continue;
          Index row = index[k].at(mm);
          mu_k.add(row, a * n + u, c);
          lm.add(row, u * prev + a, c);  // commutative:左 and right agree
        }
      }
    for (Index b = 0; b < dk; ++b) {
      const Monomial& m = basis[k][static_cast<size_t>(b)];
      Index u = -1;
      for (Index i = 0; i < n && u < 0; ++i)
        if (m[static_cast<size_t>(i)] > 0) u = i;
      Monomial rest(m);
      rest[static_cast<size_t>(u)]--;
      iota_k.add(index[k - 1].at(rest) * n + u, b, 1);
    }
    mu_k.compress();
    lm.compress();
    t.mu[k] = std::move(mu_k);
    t.iota[k] = std::move(iota_k);
    t.lmul[k - 1] = std::move(lm);
  }
  if (max_degree == 0) {
    SparseQ id(n, n);
    for (Index i = 0; i < n; ++i) id.add(i, i, 1);
    t.lmul[0] = id;
  }
  finish_tower(t);
  return t;
}

SparseQ product_matrix(const Tower& t, Index p, Index q) {
  if (p + q > t.max_degree()) throw resource_error("product degree exceeds the tower");
  // peel the left factor one variable at a time
  SparseQ acc(t.dims[p + q], t.dims[p + q]);
  for (Index i = 0; i < t.dims[p + q]; ++i) acc.add(i, i, 1);
  for (Index step = 0; step < p; ++step) {
    const Index cp = step + 1;         // composition runs from degree (1, p+q-1)
    const Index cq = p + q - step - 1;
    const Index dp = t.dims[cp], dq = t.dims[cq];
    SparseQ shift(t.dims[cp - 1] * t.dims[cq + 1], dp * dq);
    for (Index a = 0; a < dp; ++a)
      for (const auto& [amb, c1] : t.iota[cp].col[static_cast<size_t>(a)]) {
        const Index a_prev = amb / t.g, u = amb % t.g;
        for (Index b = 0; b < dq; ++b)
          for (const auto& [b_out, c2] : t.lmul[cq].col[static_cast<size_t>(u * dq + b)])
            shift.add(a_prev * t.dims[cq + 1] + b_out, a * dq + b, c1 * c2);
      }
    shift.compress();
    acc = acc.multiply(shift);
  }
  return acc;
}

GradedDims graded_dims(const QuadraticPresentation& p, Index max_degree,
                       const TowerLimits& limits) {
  Tower t = build_tower(p, max_degree, limits);
  GradedDims out;
  out.dims = t.dims;
  out.basis_labels = t.labels;
  return out;
}

Integer binomial(Index n, Index k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer quadric_dim(Index n, Index k) {
  if (k < 0) return 0;
  return binomial(n + k - 1, k) - binomial(n + k - 3, k - 2);
}

Integer clifford_graded_dim(Index n, Index k) {
  Integer total = 0;
  for (Index j = k; j >= 0; j -= 2) total += binomial(n, j);
  return total;
}

}  // namespace cliffib
