#pragma once

#include "cliffib/poly.hpp"
#include "cliffib/quadratic_form.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cliffib {

/// Basis monomials are subsets of {1..n} encoded as bit sets; the monomial
/// e_{i1}...e_{ir} (i1 < ... < ir) has bits i1-1..ir-1 set. Canonical order:
/// by (popcount, numeric value).
using Subset = std::uint32_t;

inline int parity(Subset s) { return __builtin_popcount(s) & 1; }

/// Subsets of {1..n} in canonical order; parity filter: -1 all, 0 even, 1 odd.
std::vector<Subset> subset_basis(Index n, int parity_filter = -1);

/// Element of the Clifford algebra with coefficients in an exact ring.
template <class Scalar>
struct CliffordElementT {
  std::map<Subset, Scalar> coeffs;

  bool is_zero() const { return coeffs.empty(); }

  void add(Subset s, const Scalar& c) {
    auto it = coeffs.find(s);
    if (it == coeffs.end()) {
      if (!scalar_is_zero(c)) coeffs.emplace(s, c);
    } else {
      it->second += c;
      if (scalar_is_zero(it->second)) coeffs.erase(it);
    }
  }

  Scalar coeff(Subset s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? Scalar(0) : it->second;
  }

  CliffordElementT& operator+=(const CliffordElementT& o) {
    for (const auto& [s, c] : o.coeffs) add(s, c);
    return *this;
  }
  CliffordElementT& operator-=(const CliffordElementT& o) {
    for (const auto& [s, c] : o.coeffs) add(s, Scalar(0) - c);
    return *this;
  }
  CliffordElementT operator-() const {
    CliffordElementT out;
    for (const auto& [s, c] : coeffs) out.coeffs.emplace(s, Scalar(0) - c);
    return out;
  }
  CliffordElementT& operator*=(const Scalar& f) {
    if (scalar_is_zero(f)) { coeffs.clear(); return *this; }
    for (auto& [s, c] : coeffs) c *= f;
    return *this;
  }
  friend CliffordElementT operator+(CliffordElementT a, const CliffordElementT& b) { return a += b; }
  friend CliffordElementT operator-(CliffordElementT a, const CliffordElementT& b) { return a -= b; }

  bool operator==(const CliffordElementT& o) const { return coeffs == o.coeffs; }
  bool operator!=(const CliffordElementT& o) const { return !(*this == o); }

  /// -1 odd part present only, 0 even only, -2 mixed or zero
  int pure_parity() const {
    int p = -2;
    for (const auto& [s, c] : coeffs) {
      int q = parity(s);
      if (p == -2) p = q;
      else if (p != q) return -2;
    }
    return p;
  }

  static bool scalar_is_zero(const Scalar& c);
};

template <> inline bool CliffordElementT<Rational>::scalar_is_zero(const Rational& c) {
  return cliffib::is_zero(c);
}
template <> inline bool CliffordElementT<MultiPoly>::scalar_is_zero(const MultiPoly& c) {
  return c.is_zero();
}

using CliffordElement = CliffordElementT<Rational>;

enum class Side { LEFT, RIGHT };
enum class Parity { EVEN, ODD };
enum class Subalgebra { FULL, EVEN };

/// The 2^n-dimensional Clifford algebra of a symmetric gram matrix over an
/// exact coefficient ring. Defining relations in the generator basis:
/// e_i e_j + e_j e_i = 2 G_ij, e_i^2 = G_ii. Generator product tables are
/// precomputed at construction, so all operations are const and safe to
/// call in parallel.
template <class Scalar>
class CliffordAlgebraT {
 public:
  using Element = CliffordElementT<Scalar>;

  CliffordAlgebraT(Index n, DenseMatrix<Scalar> gram);

  Index n() const { return n_; }
  Index dimension() const { return Index(1) << n_; }
  const DenseMatrix<Scalar>& gram() const { return gram_; }

  /// e_i * e_T in normal form (i is 0-based)
  const Element& generator_times(Index i, Subset t) const { return table_[index(i, t)]; }

  Element monomial_product(Subset s, Subset t) const;
  Element multiply(const Element& x, const Element& y) const;

  Element scalar_element(const Scalar& c) const {
    Element e;
    if (!Element::scalar_is_zero(c)) e.coeffs.emplace(0u, c);
    return e;
  }
  Element generator(Index i) const {
    Element e;
    e.coeffs.emplace(Subset(1) << i, Scalar(1));
    return e;
  }

 private:
  size_t index(Index i, Subset t) const { return static_cast<size_t>(i) * dimension() + t; }
  Element build_generator_times(Index i, Subset t) const;

  Index n_;
  DenseMatrix<Scalar> gram_;
  std::vector<Element> table_;
};

using CliffordAlgebra = CliffordAlgebraT<Rational>;
using CliffordAlgebraPoly = CliffordAlgebraT<MultiPoly>;

/// Matrix of multiplication by v = sum v_i e_i from the chosen parity part
/// to the opposite one, in the canonical subset basis.
QMatrix mult_map_matrix(const CliffordAlgebra& a, const QVector& v, Side side,
                        Parity source_parity);

/// Ordered product of an orthogonal basis, scaled integral-primitive with
/// positive leading coefficient. Defined up to scale by a different basis
/// choice; the orthogonalization used is recorded.
struct CentralElement {
  CliffordElement d;
  Orthogonalization basis;
  Rational d_squared;  // coefficient of 1 in d*d (d*d is always scalar)
};
CentralElement central_element(const CliffordAlgebra& a);

struct BlockData {
  Index dimension = 0;
  Index center_dimension = 0;
};

struct AlgebraStructureReport {
  enum class Kind { CENTRAL_SIMPLE, PRODUCT_OF_TWO_CENTRAL_SIMPLE, NOT_SEMISIMPLE, OTHER };
  Index dimension = 0;
  Index radical_dimension = 0;
  Index center_dimension = 0;
  std::vector<BlockData> blocks;
  Kind kind = Kind::OTHER;
  Index degree = 0;       // for the central-simple kinds
  std::string description;
  std::string certificate() const;
};

/// Any finite-dimensional associative algebra presented through its
/// multiplication; used for both Clifford subalgebras and their quotients.
struct AlgebraView {
  Index dim = 0;
  QVector unit;
  std::vector<QVector> generators;  // algebra generators, unit not required
  std::function<QVector(Index, Index)> mul_basis;

  QVector mul(const QVector& x, const QVector& y) const;
};

/// Radical via the trace form kernel (valid in characteristic 0), center via
/// the generator commutation system, splitting via degree <= 2 minimal
/// polynomials of central elements. Matrix-algebra structure over the
/// algebraic closure is certified by (dimension, radical, center) counts
/// only; no Q-isomorphism is claimed.
AlgebraStructureReport analyze_structure(const AlgebraView& a);

AlgebraView clifford_view(const CliffordAlgebra& a, Subalgebra which);

AlgebraStructureReport structure_report(const CliffordAlgebra& a, Subalgebra which);

/// Quotient by the two-sided ideal generated by the central element d;
/// requires corank exactly 1. For odd n the ideal only exists in the full
/// algebra (d is odd), for even n both choices are meaningful.
struct QuotientReport {
  Index ideal_dimension = 0;
  Index quotient_dimension = 0;
  AlgebraStructureReport structure;
};
QuotientReport quotient_by_d(const CliffordAlgebra& a, Subalgebra which);

/// Canonical text form, e.g. "1 + 2*e1e3 - 1/2*e2".
std::string print_element(const CliffordElement& e);
CliffordElement parse_element(const std::string& text, Index n);

}  // namespace cliffib
