#include "cliffib/koszul.hpp"

#include <map>

namespace cliffib {

bool relations_swap_stable(const QuadraticPresentation& p) {
  const Index g = p.gen_dim, r = p.relations.cols();
  QMatrix swapped(g * g, r);
  for (Index c = 0; c < r; ++c)
    for (Index i = 0; i < g; ++i)
      for (Index j = 0; j < g; ++j) swapped(i * g + j, c) = p.relations(j * g + i, c);
  QMatrix joined(g * g, 2 * r);
  joined.leftCols(r) = p.relations;
  joined.rightCols(r) = swapped;
  return rank_bareiss(joined) == r;
}

TowerPair make_tower_pair(const QuadraticPresentation& p, Index max_degree,
                          const TowerLimits& limits, const QMatrix* sigma_gram) {
  TowerPair tp;
  tp.p = p;
  tp.dual = quadratic_dual(p);
  if (sigma_gram) {
    // the fast tower is only valid for the quadric presentation of this gram
    QuadraticPresentation check = build_A_sigma(*sigma_gram);
    QMatrix joined(p.relations.rows(), p.relations.cols() + check.relations.cols());
    joined.leftCols(p.relations.cols()) = p.relations;
    joined.rightCols(check.relations.cols()) = check.relations;
    if (check.relation_count() != p.relation_count() ||
        rank_bareiss(joined) != p.relation_count())
      throw std::invalid_argument("sigma tower requested for a non-matching presentation");
    tp.a = build_sigma_tower(*sigma_gram, max_degree, limits);
  } else {
    tp.a = build_tower(p, max_degree, limits);
  }
  tp.b = build_tower(tp.dual, max_degree, limits);
  return tp;
}

SparseQ koszul_map(const TowerPair& tp, bool side_a, Index k, Index j) {
  const Tower& peel = side_a ? tp.b : tp.a;   // dual side, peeled by transposes
  const Tower& mult = side_a ? tp.a : tp.b;   // module side, multiplied into
  const Index g = peel.g;
  const Index rows = peel.dim(k - 1) * mult.dim(j + 1);
  const Index cols = peel.dim(k) * mult.dim(j);
  SparseQ out(rows, cols);
  if (rows == 0 || cols == 0 || k < 1) return out;
  const SparseQ& peel_t = peel.mu_t[static_cast<size_t>(k)];  // column w = row w of mu_k
  const SparseQ& lm = mult.lmul[static_cast<size_t>(j)];
  const Index dj = mult.dim(j), dj1 = mult.dim(j + 1);
  for (Index w = 0; w < peel.dim(k); ++w)
    for (const auto& [amb, c1] : peel_t.col[static_cast<size_t>(w)]) {
      const Index wp = amb / g, u = amb % g;
      for (Index a = 0; a < dj; ++a)
        for (const auto& [a2, c2] : lm.col[static_cast<size_t>(u * dj + a)])
          out.add(wp * dj1 + a2, w * dj + a, c1 * c2);
    }
  out.compress();
  return out;
}

StrandVerdict verify_strand(const TowerPair& tp, bool side_a, Index t, std::uint64_t seed) {
  StrandVerdict v;
  v.degree = t;
  if (t == 0) {
    v.dims = {1};
    v.exact = {true};
    v.certified = true;
    return v;
  }
  std::vector<SparseQ> maps;
  for (Index k = 1; k <= t; ++k) maps.push_back(koszul_map(tp, side_a, k, t - k));
  ComplexExactness ce = verify_complex(maps, seed ^ (static_cast<std::uint64_t>(t) << 8 |
                                                     (side_a ? 1 : 0)));
  v.dims = ce.dims;
  v.ranks = ce.ranks;
  v.d_squared_zero = ce.d_squared_zero;
  v.certified = ce.certified || !ce.used_fallback;
  for (bool e : ce.exact_at) v.exact.push_back(e);
  v.surjective_onto_c0 = ce.exact_at[0];
  for (Index k = 1; k < t; ++k)
    if (!ce.exact_at[static_cast<size_t>(k)]) v.all_interior_exact = false;
  return v;
}

KoszulReport koszul_verify(const TowerPair& tp, Index max_degree, std::uint64_t seed) {
  KoszulReport rep;
  rep.max_degree = max_degree;
  rep.dims_a = tp.a.dims;
  rep.dims_dual = tp.b.dims;
  for (Index m = 0; m <= max_degree; ++m) {
    Integer c = 0;
    for (Index k = 0; k <= m; ++k) {
      Integer term = Integer(tp.b.dim(k)) * Integer(tp.a.dim(m - k));
      c += (k % 2 == 0) ? term : -term;
    }
    if (m == 0) c -= 1;
    if (c != 0) rep.residual_zero = false;
    rep.hilbert_residual.push_back(c);
  }
  for (Index t = 1; t <= max_degree; ++t) {
    rep.complex_a.push_back(verify_strand(tp, true, t, seed));
    rep.complex_dual.push_back(verify_strand(tp, false, t, seed));
    const StrandVerdict& sa = rep.complex_a.back();
    const StrandVerdict& sb = rep.complex_dual.back();
    if (!sa.d_squared_zero || !sb.d_squared_zero)
      throw invariant_error("koszul differential fails d*d = 0");
    for (bool e : sa.exact) rep.all_exact = rep.all_exact && e;
    for (bool e : sb.exact) rep.all_exact = rep.all_exact && e;
  }
  return rep;
}

TruncationReport truncation_module(const TowerPair& tp, Index k, Index max_p,
                                   std::uint64_t seed) {
  if (k < 0 || k + max_p > tp.b.max_degree() || k + max_p > tp.a.max_degree())
    throw resource_error("truncation degree exceeds the towers");
  TruncationReport rep;
  rep.k = k;
  for (Index p = 0; p <= max_p; ++p) {
    if (k == 0) {
      // R^0 = the free module itself
      rep.dims.push_back(tp.a.dim(p));
      continue;
    }
    StrandVerdict v = verify_strand(tp, true, k + p, seed);
    const Index dim_rk = v.dims[static_cast<size_t>(k)] - v.ranks[static_cast<size_t>(k)];
    rep.dims.push_back(dim_rk);
    // left resolution: positions >= k of the strand
    for (Index pos = k; pos < k + p; ++pos)
      if (!v.exact[static_cast<size_t>(pos)]) rep.left_resolution_exact = false;
    // right resolution: positions < k plus the augmentation position
    for (Index pos = 0; pos < k; ++pos)
      if (!v.exact[static_cast<size_t>(pos)]) rep.right_resolution_exact = false;
    // Euler characteristic of the right resolution
    Integer euler = 0;
    for (Index i = 0; i <= k; ++i) {
      Integer term = Integer(tp.b.dim(k - i)) * Integer(tp.a.dim(p + i));
      euler += (i % 2 == 0) ? term : -term;
    }
    if (euler != dim_rk) rep.euler_consistent = false;
  }
  for (Index i = k; i >= 1; --i) rep.right_resolution_maps.push_back(koszul_map(tp, true, i, max_p + k - i));
  return rep;
}

namespace {

// ambient diagonal differential on B*_k ⊗ A_p ⊗ A_j: peel the first tensor
// slot of the dual factor, left-multiply it into the second module factor
SparseQ diagonal_ambient_map(const TowerPair& tp, Index k, Index p, Index j) {
  const Tower& b = tp.b;
  const Tower& a = tp.a;
  const Index dbk = b.dim(k), dbk1 = b.dim(k - 1);
  const Index dap = a.dim(p), daj = a.dim(j), daj1 = a.dim(j + 1);
  SparseQ out(dbk1 * dap * daj1, dbk * dap * daj);
  if (out.rows == 0 || out.cols == 0) return out;
  const SparseQ& peel = b.lmul_t[static_cast<size_t>(k - 1)];  // B*_k -> U ⊗ B*_{k-1}
  const SparseQ& lm = a.lmul[static_cast<size_t>(j)];
  for (Index w = 0; w < dbk; ++w)
    for (const auto& [amb, c1] : peel.col[static_cast<size_t>(w)]) {
      const Index u = amb / dbk1, wp = amb % dbk1;
      for (Index av = 0; av < dap; ++av)
        for (Index bv = 0; bv < daj; ++bv)
          for (const auto& [b2, c2] : lm.col[static_cast<size_t>(u * daj + bv)])
            out.add((wp * dap + av) * daj1 + b2, (w * dap + av) * daj + bv, c1 * c2);
    }
  out.compress();
  return out;
}

// K ⊗ I_dim as a sparse matrix
SparseQ kron_right_identity(const SparseQ& k, Index dim) {
  SparseQ out(k.rows * dim, k.cols * dim);
  for (Index c = 0; c < k.cols; ++c)
    for (const auto& [r, v] : k.col[static_cast<size_t>(c)])
      for (Index i = 0; i < dim; ++i) out.add(r * dim + i, c * dim + i, v);
  return out;
}

}  // namespace

DiagonalReport diagonal_resolution_check(const TowerPair& tp, Index bound_p, Index bound_q,
                                         std::uint64_t seed) {
  if (!relations_swap_stable(tp.p))
    throw input_error("RELATIONS_NOT_SWAP_STABLE",
                      "diagonal resolution differential needs a swap-stable relation span");
  DiagonalReport rep;
  rep.bound_p = bound_p;
  rep.bound_q = bound_q;

  // kernel bases R^k_p: independent columns of the next strand map, selected
  // through the modular rank profile and certified exactly
  Rng rng(seed ^ 0xd1a60);
  std::map<std::pair<Index, Index>, SparseQ> kernels;
  std::map<std::pair<Index, Index>, Index> rk_dim;
  auto kernel_of = [&](Index k, Index p) -> const SparseQ& {
    auto key = std::make_pair(k, p);
    auto it = kernels.find(key);
    if (it != kernels.end()) return it->second;
    if (k == 0) {
      const Index d = tp.a.dim(p);
      SparseQ id(d, d);
      for (Index i = 0; i < d; ++i) id.add(i, i, 1);
      rk_dim[key] = d;
      return kernels.emplace(key, std::move(id)).first->second;
    }
    SparseQ here = koszul_map(tp, true, k, p);
    const Index dim_ker = here.cols - [&] {
      StrandVerdict v = verify_strand(tp, true, k + p, seed);
      return v.ranks[static_cast<size_t>(k)];
    }();
    SparseQ incoming = (p >= 1) ? koszul_map(tp, true, k + 1, p - 1)
                                : SparseQ(here.cols, 0);
    // columns of the incoming map span the kernel when the strand is exact
    SparseQ basis(here.cols, 0);
    if (incoming.cols > 0 && dim_ker > 0) {
      std::uint32_t prime = random_prime(rng);
      RankProfile prof = rank_profile_mod_p(incoming, prime);
      basis = SparseQ(here.cols, static_cast<Index>(prof.pivot_cols.size()));
      for (size_t i = 0; i < prof.pivot_cols.size(); ++i)
        basis.col[i] = incoming.col[static_cast<size_t>(prof.pivot_cols[i])];
    }
    if (basis.cols != dim_ker)
      throw invariant_error("kernel basis selection failed: strand is not exact here");
    if (!here.multiply(basis).is_zero())
      throw invariant_error("kernel basis selection failed: columns leave the kernel");
    rk_dim[key] = dim_ker;
    return kernels.emplace(key, std::move(basis)).first->second;
  };

  for (Index p = 0; p <= bound_p; ++p)
    for (Index q = 0; q <= bound_q; ++q) {
      BidegreeVerdict verdict;
      verdict.p = p;
      verdict.q = q;
      // chain spaces: position 0 = A_{p+q}, position i = T_{i-1} = R^{i-1}_p ⊗ A_{q-i+1}
      std::vector<Index> dims = {tp.a.dim(p + q)};
      std::vector<SparseQ> maps;
      bool nest = true;
      SparseQ aug = product_matrix(tp.a, p, q);
      maps.push_back(aug);
      dims.push_back(tp.a.dim(p) * tp.a.dim(q));
      for (Index k = 1; k <= q; ++k) {
        const SparseQ& kk = kernel_of(k, p);
        SparseQ f = diagonal_ambient_map(tp, k, p, q - k)
                        .multiply(kron_right_identity(kk, tp.a.dim(q - k)));
        dims.push_back(rk_dim.at({k, p}) * tp.a.dim(q - k));
        // exact nesting checks: composition to zero and membership in the
        // previous kernel subspace
        if (k == 1) {
          if (!aug.multiply(f).is_zero()) nest = false;
        } else {
          if (!diagonal_ambient_map(tp, k - 1, p, q - k + 1).multiply(f).is_zero())
            nest = false;
          SparseQ member = koszul_map(tp, true, k - 1, p);
          if (!kron_right_identity(member, tp.a.dim(q - k + 1)).multiply(f).is_zero())
            nest = false;
        }
        maps.push_back(std::move(f));
      }
      ComplexExactness ce = certify_chain_ranks(
          maps, dims, nest, seed ^ (static_cast<std::uint64_t>(p) << 20 | q));
      verdict.dims = dims;
      verdict.certified = ce.certified || !ce.used_fallback;
      verdict.exact = nest;
      for (bool e : ce.exact_at) verdict.exact = verdict.exact && e;
      rep.all_exact = rep.all_exact && verdict.exact;
      rep.bidegrees.push_back(std::move(verdict));
    }
  return rep;
}

}  // namespace cliffib
