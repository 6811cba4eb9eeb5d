#include "cliffib/clifford.hpp"

#include "cliffib/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

namespace cliffib {

std::vector<Subset> subset_basis(Index n, int parity_filter) {
  std::vector<Subset> out;
  const Subset end = Subset(1) << n;
  for (Subset s = 0; s < end; ++s)
    if (parity_filter < 0 || parity(s) == parity_filter) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [](Subset a, Subset b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

template <class Scalar>
CliffordAlgebraT<Scalar>::CliffordAlgebraT(Index n, DenseMatrix<Scalar> gram)
    : n_(n), gram_(std::move(gram)) {
  if (n < 1 || n > 28) throw input_error("BAD_N", "generator count out of range");
  if (gram_.rows() != n || gram_.cols() != n)
    throw input_error("BAD_GRAM", "gram matrix must be n x n");
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (!(gram_(i, j) == gram_(j, i)))
        throw input_error("ASYMMETRIC_GRAM", "gram matrix is not symmetric");
  table_.resize(static_cast<size_t>(n) * dimension());
  // increasing subset order guarantees the recursion below only needs
  // already-filled entries (t' < t)
  for (Subset t = 0; t < static_cast<Subset>(dimension()); ++t)
    for (Index i = 0; i < n; ++i) table_[index(i, t)] = build_generator_times(i, t);
}

template <class Scalar>
CliffordElementT<Scalar> CliffordAlgebraT<Scalar>::build_generator_times(Index i, Subset t) const {
  Element out;
  const Subset bit = Subset(1) << i;
  if (t == 0 || bit < (t & -t)) {  // i precedes every factor of e_T
    out.coeffs.emplace(bit | t, Scalar(1));
    return out;
  }
  const Subset low = t & -t;      // e_min(T)
  const Index m = __builtin_ctz(low);
  const Subset rest = t ^ low;
  if (bit == low) {               // e_i e_i = G_ii
    if (!Element::scalar_is_zero(gram_(i, i))) out.coeffs.emplace(rest, gram_(i, i));
    return out;
  }
  // e_i e_m = 2 G_im - e_m e_i, and e_m slides to the front of every
  // monomial of e_i e_rest since m precedes them all
  Scalar twice = gram_(i, m) + gram_(i, m);
  if (!Element::scalar_is_zero(twice)) out.coeffs.emplace(rest, twice);
  const Element& tail = table_[index(i, rest)];
  for (const auto& [s, c] : tail.coeffs) out.add(s | low, Scalar(0) - c);
  return out;
}

template <class Scalar>
CliffordElementT<Scalar> CliffordAlgebraT<Scalar>::monomial_product(Subset s, Subset t) const {
  Element acc;
  acc.coeffs.emplace(t, Scalar(1));
  // peel the generators of e_S from the right
  while (s) {
    Index i = static_cast<Index>(31 - __builtin_clz(s));
    s &= ~(Subset(1) << i);
    Element next;
    for (const auto& [m, c] : acc.coeffs) {
      const Element& g = generator_times(i, m);
      for (const auto& [m2, c2] : g.coeffs) next.add(m2, c * c2);
    }
    acc = std::move(next);
  }
  return acc;
}

template <class Scalar>
CliffordElementT<Scalar> CliffordAlgebraT<Scalar>::multiply(const Element& x,
                                                            const Element& y) const {
  Element out;
  for (const auto& [s, cx] : x.coeffs) {
    Element sy;
    sy.coeffs = y.coeffs;
    Subset rem = s;
    while (rem) {
      Index i = static_cast<Index>(31 - __builtin_clz(rem));
      rem &= ~(Subset(1) << i);
      Element next;
      for (const auto& [m, c] : sy.coeffs) {
        const Element& g = generator_times(i, m);
        for (const auto& [m2, c2] : g.coeffs) next.add(m2, c * c2);
      }
      sy = std::move(next);
    }
    for (const auto& [m, c] : sy.coeffs) out.add(m, cx * c);
  }
  return out;
}

template class CliffordAlgebraT<Rational>;
template class CliffordAlgebraT<MultiPoly>;

QMatrix mult_map_matrix(const CliffordAlgebra& a, const QVector& v, Side side,
                        Parity source_parity) {
  if (v.size() != a.n()) throw input_error("BAD_VECTOR", "vector length must equal n");
  const int src = source_parity == Parity::EVEN ? 0 : 1;
  auto source = subset_basis(a.n(), src);
  auto target = subset_basis(a.n(), 1 - src);
  std::map<Subset, Index> target_index;
  for (Index k = 0; k < static_cast<Index>(target.size()); ++k) target_index[target[k]] = k;
  CliffordElement vel;
  for (Index i = 0; i < a.n(); ++i) vel.add(Subset(1) << i, v(i));
  QMatrix out = QMatrix::Zero(static_cast<Index>(target.size()),
                              static_cast<Index>(source.size()));
  for (Index c = 0; c < static_cast<Index>(source.size()); ++c) {
    CliffordElement basis_el;
    basis_el.coeffs.emplace(source[c], Rational(1));
    CliffordElement prod = side == Side::LEFT ? a.multiply(vel, basis_el)
                                              : a.multiply(basis_el, vel);
    for (const auto& [s, coeff] : prod.coeffs) out(target_index.at(s), c) = coeff;
  }
  return out;
}

CentralElement central_element(const CliffordAlgebra& a) {
  CentralElement out;
  out.basis = orthogonalize(a.gram());
  CliffordElement d = a.scalar_element(1);
  for (Index j = 0; j < a.n(); ++j) {
    CliffordElement w;
    for (Index i = 0; i < a.n(); ++i) w.add(Subset(1) << i, out.basis.basis_change(i, j));
    d = a.multiply(d, w);
  }
  if (!d.is_zero()) {
    // integral, primitive, positive leading coefficient (leading = maximal
    // monomial in the canonical order)
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [s, c] : d.coeffs) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational scale(num_gcd, den_lcm);
    scale.canonicalize();
    Subset lead = 0;
    int best_pop = -1;
    for (const auto& [s, c] : d.coeffs) {
      int p = __builtin_popcount(s);
      if (p > best_pop || (p == best_pop && s > lead)) { lead = s; best_pop = p; }
    }
    if (sgn(d.coeffs.at(lead)) < 0) scale = -scale;
    for (auto& [s, c] : d.coeffs) c /= scale;
  }
  out.d = d;
  CliffordElement d2 = a.multiply(d, d);
  for (const auto& [s, c] : d2.coeffs)
    if (s != 0) throw invariant_error("d^2 is not scalar");
  out.d_squared = d2.coeff(0);
  return out;
}

QVector AlgebraView::mul(const QVector& x, const QVector& y) const {
  QVector out = QVector::Zero(dim);
  for (Index i = 0; i < dim; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < dim; ++j) {
      if (is_zero(y(j))) continue;
      out += x(i) * y(j) * mul_basis(i, j);
    }
  }
  return out;
}

std::string AlgebraStructureReport::certificate() const {
  switch (kind) {
    case Kind::CENTRAL_SIMPLE:
      return "CENTRAL_SIMPLE(" + std::to_string(degree) + ")";
    case Kind::PRODUCT_OF_TWO_CENTRAL_SIMPLE:
      return "PRODUCT_OF_TWO_CENTRAL_SIMPLE(" + std::to_string(degree) + ")";
    case Kind::NOT_SEMISIMPLE:
      return "NOT_SEMISIMPLE";
    case Kind::OTHER:
      return "OTHER(" + description + ")";
  }
  return "OTHER()";
}

namespace {

Index perfect_square_degree(Index dim) {
  Index k = 0;
  while (k * k < dim) ++k;
  return k * k == dim ? k : -1;
}

}  // namespace

AlgebraStructureReport analyze_structure(const AlgebraView& a) {
  if (a.dim > 256)
    throw resource_error("structure analysis capped at dimension 256 (got " +
                         std::to_string(a.dim) + ")");
  AlgebraStructureReport out;
  out.dimension = a.dim;

  // structure constants, kept once
  std::vector<QVector> table(static_cast<size_t>(a.dim) * a.dim);
  for (Index i = 0; i < a.dim; ++i)
    for (Index j = 0; j < a.dim; ++j) table[static_cast<size_t>(i) * a.dim + j] = a.mul_basis(i, j);

  // trace functional tau(z) = tr(L_z); trace form T_ij = tau(b_i b_j)
  QVector tau = QVector::Zero(a.dim);
  for (Index k = 0; k < a.dim; ++k) {
    Rational t = 0;
    for (Index j = 0; j < a.dim; ++j) t += table[static_cast<size_t>(k) * a.dim + j](j);
    tau(k) = t;
  }
  QMatrix trace_form(a.dim, a.dim);
  for (Index i = 0; i < a.dim; ++i)
    for (Index j = i; j < a.dim; ++j) {
      Rational v = tau.dot(table[static_cast<size_t>(i) * a.dim + j]);
      trace_form(i, j) = v;
      trace_form(j, i) = v;
    }
  out.radical_dimension = a.dim - rank_bareiss(trace_form);

  // center: commute with every generator
  QMatrix commute(static_cast<Index>(a.generators.size()) * a.dim, a.dim);
  for (size_t g = 0; g < a.generators.size(); ++g) {
    const QVector& gen = a.generators[g];
    for (Index j = 0; j < a.dim; ++j) {
      QVector col = QVector::Zero(a.dim);
      for (Index i = 0; i < a.dim; ++i)
        if (!is_zero(gen(i)))
          col += gen(i) * (table[static_cast<size_t>(i) * a.dim + j] -
                           table[static_cast<size_t>(j) * a.dim + i]);
      commute.block(static_cast<Index>(g) * a.dim, j, a.dim, 1) = col;
    }
  }
  QMatrix center = kernel_matrix(commute);
  out.center_dimension = center.cols();

  if (out.radical_dimension > 0) {
    out.kind = AlgebraStructureReport::Kind::NOT_SEMISIMPLE;
    out.description = "radical dimension " + std::to_string(out.radical_dimension);
    return out;
  }

  if (out.center_dimension == 1) {
    out.blocks.push_back({a.dim, 1});
    Index deg = perfect_square_degree(a.dim);
    if (deg > 0) {
      out.kind = AlgebraStructureReport::Kind::CENTRAL_SIMPLE;
      out.degree = deg;
      out.description = "matrix algebra of degree " + std::to_string(deg) +
                        " after base change to the algebraic closure";
    } else {
      out.kind = AlgebraStructureReport::Kind::OTHER;
      out.description = "center 1, radical 0, but dimension is not a perfect square";
    }
    return out;
  }

  if (out.center_dimension == 2) {
    // pick a central element independent of the unit and try to split it
    QVector z = center.col(0);
    if (rank_bareiss((QMatrix(a.dim, 2) << a.unit, z).finished()) < 2) z = center.col(1);
    QVector z2 = a.mul(z, z);
    auto combo = solve((QMatrix(a.dim, 2) << a.unit, z).finished(), z2);
    if (combo) {
      const Rational alpha = (*combo)(0), beta = (*combo)(1);
      // minimal polynomial t^2 - beta t - alpha; rational roots iff the
      // discriminant is a rational square
      Rational disc = beta * beta + 4 * alpha;
      if (sgn(disc) > 0 && mpz_perfect_square_p(disc.get_num_mpz_t()) &&
          mpz_perfect_square_p(disc.get_den_mpz_t())) {
        Integer num_root, den_root;
        mpz_sqrt(num_root.get_mpz_t(), disc.get_num_mpz_t());
        mpz_sqrt(den_root.get_mpz_t(), disc.get_den_mpz_t());
        Rational root(num_root, den_root);
        root.canonicalize();
        Rational l1 = (beta + root) / 2, l2 = (beta - root) / 2;
        QVector idem = (z - l2 * a.unit) / (l1 - l2);
        std::vector<QVector> idems = {idem, a.unit - idem};
        bool square_blocks = true;
        Index common_degree = -1;
        for (const QVector& e : idems) {
          QMatrix image(a.dim, a.dim);
          for (Index j = 0; j < a.dim; ++j) image.col(j) = a.mul(e, unit_vector(a.dim, j));
          Index bdim = rank_bareiss(image);
          QMatrix zcenter(a.dim, center.cols());
          for (Index j = 0; j < center.cols(); ++j) zcenter.col(j) = a.mul(e, center.col(j));
          Index bcenter = rank_bareiss(zcenter);
          out.blocks.push_back({bdim, bcenter});
          Index deg = perfect_square_degree(bdim);
          if (deg < 0 || bcenter != 1) square_blocks = false;
          if (common_degree < 0) common_degree = deg;
          else if (deg != common_degree) square_blocks = false;
        }
        if (square_blocks) {
          out.kind = AlgebraStructureReport::Kind::PRODUCT_OF_TWO_CENTRAL_SIMPLE;
          out.degree = common_degree;
          out.description = "splits over Q into two blocks of degree " +
                            std::to_string(common_degree);
        } else {
          out.kind = AlgebraStructureReport::Kind::OTHER;
          out.description = "center splits but block dimensions are not matching squares";
        }
        return out;
      }
      out.blocks.push_back({a.dim, 2});
      out.kind = AlgebraStructureReport::Kind::OTHER;
      std::ostringstream os;
      os << "semisimple with quadratic field center Q(sqrt(" << disc.get_str()
         << ")); product of two central simple algebras after base change";
      out.description = os.str();
      return out;
    }
  }

  out.kind = AlgebraStructureReport::Kind::OTHER;
  out.description = "center dimension " + std::to_string(out.center_dimension) +
                    "; splitting beyond degree 2 not attempted";
  return out;
}

AlgebraView clifford_view(const CliffordAlgebra& a, Subalgebra which) {
  auto basis = subset_basis(a.n(), which == Subalgebra::FULL ? -1 : 0);
  auto idx = std::make_shared<std::map<Subset, Index>>();
  for (Index k = 0; k < static_cast<Index>(basis.size()); ++k) (*idx)[basis[k]] = k;
  AlgebraView v;
  v.dim = static_cast<Index>(basis.size());
  v.unit = unit_vector(v.dim, 0);
  auto shared_basis = std::make_shared<std::vector<Subset>>(std::move(basis));
  auto alg = &a;
  v.mul_basis = [alg, shared_basis, idx](Index i, Index j) {
    CliffordElement p = alg->monomial_product((*shared_basis)[i], (*shared_basis)[j]);
    QVector out = QVector::Zero(static_cast<Index>(shared_basis->size()));
    for (const auto& [s, c] : p.coeffs) out(idx->at(s)) = c;
    return out;
  };
  if (which == Subalgebra::FULL) {
    for (Index i = 0; i < a.n(); ++i) {
      QVector g = QVector::Zero(v.dim);
      g(idx->at(Subset(1) << i)) = 1;
      v.generators.push_back(g);
    }
  } else {
    for (Index i = 0; i < a.n(); ++i)
      for (Index j = i + 1; j < a.n(); ++j) {
        QVector g = QVector::Zero(v.dim);
        g(idx->at((Subset(1) << i) | (Subset(1) << j))) = 1;
        v.generators.push_back(g);
      }
  }
  return v;
}

AlgebraStructureReport structure_report(const CliffordAlgebra& a, Subalgebra which) {
  return analyze_structure(clifford_view(a, which));
}

QuotientReport quotient_by_d(const CliffordAlgebra& a, Subalgebra which) {
  const Index corank = a.n() - rank_bareiss(a.gram());
  if (corank != 1)
    throw input_error("CORANK_MISMATCH",
                      "quotient by d requires corank exactly 1, got " + std::to_string(corank));
  CentralElement ce = central_element(a);
  if (which == Subalgebra::EVEN && (a.n() & 1))
    throw input_error("PARITY", "d is odd for odd n and generates no ideal in the even part");

  AlgebraView view = clifford_view(a, which);
  auto basis = subset_basis(a.n(), which == Subalgebra::FULL ? -1 : 0);
  std::map<Subset, Index> idx;
  for (Index k = 0; k < static_cast<Index>(basis.size()); ++k) idx[basis[k]] = k;

  QVector dvec = QVector::Zero(view.dim);
  for (const auto& [s, c] : ce.d.coeffs) dvec(idx.at(s)) = c;

  // two-sided ideal: close span{d} under left/right multiplication by the
  // subalgebra generators; the span is kept reduced incrementally
  std::vector<QVector> reduced_rows;   // echelon rows, pivot normalized to 1
  std::vector<Index> pivots;
  auto insert = [&](QVector v) {
    for (size_t r = 0; r < reduced_rows.size(); ++r)
      if (!is_zero(v(pivots[r]))) v -= v(pivots[r]) * reduced_rows[r];
    Index p = -1;
    for (Index i = 0; i < view.dim && p < 0; ++i)
      if (!is_zero(v(i))) p = i;
    if (p < 0) return false;
    v /= v(p);
    for (size_t r = 0; r < reduced_rows.size(); ++r)
      if (!is_zero(reduced_rows[r](p))) reduced_rows[r] -= reduced_rows[r](p) * v;
    reduced_rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  };
  std::vector<QVector> frontier = {dvec};
  while (!frontier.empty()) {
    std::vector<QVector> next;
    for (const QVector& v : frontier) {
      if (!insert(v)) continue;
      for (const QVector& g : view.generators) {
        next.push_back(view.mul(g, v));
        next.push_back(view.mul(v, g));
      }
    }
    frontier = std::move(next);
  }

  QuotientReport out;
  out.ideal_dimension = static_cast<Index>(reduced_rows.size());
  out.quotient_dimension = view.dim - out.ideal_dimension;

  // quotient coordinates: non-pivot coordinates of the row-reduced ideal
  Rref ideal_rref;
  {
    std::vector<size_t> order(reduced_rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    ideal_rref.mat = QMatrix(out.ideal_dimension, view.dim);
    for (size_t i = 0; i < order.size(); ++i) {
      ideal_rref.mat.row(static_cast<Index>(i)) = reduced_rows[order[i]].transpose();
      ideal_rref.pivot_cols.push_back(pivots[order[i]]);
    }
  }
  std::vector<bool> pivot(view.dim, false);
  for (Index c : ideal_rref.pivot_cols) pivot[c] = true;
  std::vector<Index> free_coords;
  for (Index i = 0; i < view.dim; ++i)
    if (!pivot[i]) free_coords.push_back(i);
  const Index qdim = out.quotient_dimension;

  auto reduce = [&, ideal_rref](QVector v) {
    for (Index r = 0; r < ideal_rref.rank(); ++r) {
      Index c = ideal_rref.pivot_cols[r];
      if (!is_zero(v(c))) v -= v(c) * QVector(ideal_rref.mat.row(r).transpose());
    }
    QVector out_q(qdim);
    for (Index k = 0; k < qdim; ++k) out_q(k) = v(free_coords[k]);
    return out_q;
  };

  auto lift = [free_coords, dim = view.dim](const QVector& v) {
    QVector out_v = QVector::Zero(dim);
    for (Index k = 0; k < static_cast<Index>(free_coords.size()); ++k)
      out_v(free_coords[k]) = v(k);
    return out_v;
  };

  // induced multiplication on quotient coordinates
  auto qtable = std::make_shared<std::vector<QVector>>(static_cast<size_t>(qdim) * qdim);
  for (Index i = 0; i < qdim; ++i)
    for (Index j = 0; j < qdim; ++j)
      (*qtable)[static_cast<size_t>(i) * qdim + j] =
          reduce(view.mul(lift(unit_vector(qdim, i)), lift(unit_vector(qdim, j))));

  AlgebraView qview;
  qview.dim = qdim;
  qview.unit = reduce(view.unit);
  for (const QVector& g : view.generators) qview.generators.push_back(reduce(g));
  qview.mul_basis = [qtable, qdim](Index i, Index j) {
    return (*qtable)[static_cast<size_t>(i) * qdim + j];
  };
  out.structure = analyze_structure(qview);
  return out;
}

std::string print_element(const CliffordElement& e) {
  if (e.is_zero()) return "0";
  // canonical order: (popcount, value)
  std::vector<std::pair<Subset, Rational>> terms(e.coeffs.begin(), e.coeffs.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int pa = __builtin_popcount(a.first), pb = __builtin_popcount(b.first);
    return pa != pb ? pa < pb : a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c0] : terms) {
    Rational c = c0;
    if (first) {
      if (sgn(c) < 0) { os << "-"; c = -c; }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    if (s == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      for (Index i = 0; i < 32; ++i)
        if (s & (Subset(1) << i)) os << "e" << (i + 1);
    }
  }
  return os.str();
}

CliffordElement parse_element(const std::string& text, Index n) {
  CliffordElement out;
  size_t pos = 0;
  auto skip = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  bool first = true;
  skip();
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (pos >= text.size()) break;
      if (text[pos] == '+') ++pos;
      else if (text[pos] == '-') { sign = -1; ++pos; }
      else if (!first) throw input_error("SYNTAX", "expected '+' or '-' between terms");
    }
    first = false;
    skip();
    Rational coeff = 1;
    bool saw_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string num = text.substr(start, pos - start);
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        size_t dstart = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        num += "/" + text.substr(dstart, pos - dstart);
      }
      coeff = rational_from_string(num);
      saw_coeff = true;
      skip();
      if (pos < text.size() && text[pos] == '*') { ++pos; skip(); }
    }
    Subset s = 0;
    while (pos < text.size() && text[pos] == 'e') {
      ++pos;
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw input_error("SYNTAX", "expected generator index after 'e'");
      long i = std::stol(text.substr(start, pos - start));
      if (i < 1 || i > n) throw input_error("BAD_INDEX", "generator index out of range: e" + std::to_string(i));
      Subset bit = Subset(1) << (i - 1);
      if (s & bit) throw input_error("SYNTAX", "repeated generator in monomial");
      s |= bit;
    }
    if (s == 0 && !saw_coeff) throw input_error("SYNTAX", "expected term");
    out.add(s, Rational(sign) * coeff);
    skip();
  }
  return out;
}

}  // namespace cliffib
