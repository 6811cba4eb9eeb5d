#pragma once

#include "cliffib/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace cliffib {

/// Exponent vector; length always equals the ambient variable count.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

/// Graded lexicographic order in the declared variable order. Used both for
/// canonical printing and for normal-form reduction.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Sparse multivariate polynomial over Q with a fixed ordered variable list.
/// No zero coefficients are stored. Polynomials over different variable
/// lists only mix when one side is constant.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(Rational c) { if (!cliffib::is_zero(c)) terms_[Monomial{}] = std::move(c); }
  MultiPoly(std::vector<std::string> vars, Rational c) : vars_(std::move(vars)) {
    if (!cliffib::is_zero(c)) terms_[Monomial(vars_.size(), 0)] = std::move(c);
  }

  static MultiPoly zero(std::vector<std::string> vars) { return MultiPoly(std::move(vars), 0); }
  static MultiPoly constant(std::vector<std::string> vars, Rational c) {
    return MultiPoly(std::move(vars), std::move(c));
  }
  static MultiPoly variable(std::vector<std::string> vars, size_t index, unsigned power = 1);
  static MultiPoly monomial(std::vector<std::string> vars, Monomial m, Rational c);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Monomial, Rational, GrlexLess>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  unsigned degree() const;          // total degree; 0 for the zero polynomial

  Rational coeff(const Monomial& m) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(size_t var_index) const;

  /// Full evaluation; point length must match the variable count.
  Rational evaluate(const std::vector<Rational>& point) const;

  /// Content (gcd of coefficients, positive) and the primitive part.
  Rational content() const;
  MultiPoly primitive_part() const;

  /// Canonical text form; parse(print(p), vars) == p.
  std::string print() const;

 private:
  std::vector<std::string> vars_;
  std::map<Monomial, Rational, GrlexLess> terms_;

  void trim(const Monomial& key);
  static void align(MultiPoly& a, const MultiPoly& b);
  friend MultiPoly promote(const MultiPoly& p, const std::vector<std::string>& vars);
};

/// Lift a constant polynomial into a variable context (identity when the
/// contexts already agree).
MultiPoly promote(const MultiPoly& p, const std::vector<std::string>& vars);

/// Parse the coefficient wire format: integers/rationals, named variables,
/// + - * ^ and parentheses. Throws input_error with a position on bad syntax
/// and on unknown variable names.
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

/// Univariate gcd (monic result) used by the squarefreeness test; inputs
/// must involve at most the single given variable index.
MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b, size_t var_index);

using PolyMatrix = DenseMatrix<MultiPoly>;

PolyMatrix poly_matrix_from_rational(const QMatrix& m, const std::vector<std::string>& vars);
QMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<Rational>& point);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

/// Exact determinant by minor-expansion dynamic programming over column
/// subsets; fine for the small symbolic matrices that arise here.
MultiPoly det_poly(const PolyMatrix& m);

/// All k x k minors; entries deduplicated up to sign with a positive-leading
/// normalization.
std::vector<MultiPoly> minors(const PolyMatrix& m, Index k, bool deduplicate = true);

/// Probabilistic-certified generic rank over the fraction field: the maximum
/// exact rank over `trials` random integer specializations. Always a lower
/// bound on the generic rank; full rank is certified exactly.
struct GenericRank {
  Index rank = 0;
  std::vector<Rational> witness;  // specialization achieving the max
  Index trials = 0;
  long bound = 0;
  bool full_rank_certified = false;
};
GenericRank generic_rank(const PolyMatrix& m, Index trials, Rng& rng, long bound = 10000);

}  // namespace cliffib

namespace Eigen {
template <>
struct NumTraits<cliffib::MultiPoly> : GenericNumTraits<cliffib::MultiPoly> {
  typedef cliffib::MultiPoly Real;
  typedef cliffib::MultiPoly NonInteger;
  typedef cliffib::MultiPoly Nested;
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 600,
    MulCost = 900
  };
};
}  // namespace Eigen
