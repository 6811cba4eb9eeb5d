#pragma once

#include "cliffib/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cliffib {

/// A symmetric matrix of polynomials over the base parameters: the input
/// object for every analysis. The twisting line bundle is trivialized, so
/// the bare gram matrix carries all the data.
struct QuadraticForm {
  Index n = 0;
  std::vector<std::string> base_vars;
  PolyMatrix gram;

  /// Validates symmetry (exact polynomial equality entry by entry; an
  /// asymmetric matrix is an input error, never silently symmetrized).
  static QuadraticForm create(Index n, std::vector<std::string> base_vars, PolyMatrix gram);

  bool point_base() const { return base_vars.empty(); }

  QMatrix gram_at(const std::vector<Rational>& point) const;

  /// q(v) = v^T G v with rational G (point base or pre-specialized).
  static Rational value(const QMatrix& g, const QVector& v);
};

MultiPoly discriminant(const QuadraticForm& q);

Index corank_at(const QuadraticForm& q, const std::vector<Rational>& point);

/// Generators of the d-th degeneration ideal: all (n+1-d)-minors of the
/// gram matrix, deduplicated up to sign. 1 <= d <= n.
std::vector<MultiPoly> degeneration_ideal(const QuadraticForm& q, Index d);

/// Symmetric diagonalization of a rational symmetric matrix: P^T G P is
/// exactly diagonal, zero diagonal entries last.
struct Orthogonalization {
  std::vector<Rational> diagonal;
  QMatrix basis_change;  // P, invertible
};
Orthogonalization orthogonalize(const QMatrix& g);
Orthogonalization orthogonalize_at(const QuadraticForm& q, const std::vector<Rational>& point);

/// A nonzero rational vector with q(v) = 0, searched through the
/// diagonalized form: a zero diagonal entry, or a pair a_i, a_j whose ratio
/// is minus a rational square. Complete only over those patterns.
std::optional<QVector> find_isotropic(const QuadraticForm& q, const std::vector<Rational>& point);
std::optional<QVector> find_isotropic(const QMatrix& g);

/// Degeneration-strata summary. simple_degenerations is decided for bases
/// of dimension <= 2 (squarefree discriminant test); reported unverified
/// above that.
struct StrataReport {
  MultiPoly discriminant;
  std::vector<std::vector<MultiPoly>> corank_ideals;  // index d-1 holds level d
  std::optional<bool> simple_degenerations;
  std::string witness;
};
StrataReport strata_report(const QuadraticForm& q, Index max_level = 3);

/// Squarefreeness of the discriminant for pencils (two base parameters,
/// homogeneous) and one-parameter bases, via gcd with partial derivatives.
std::optional<bool> discriminant_squarefree(const QuadraticForm& q, std::string* witness);

}  // namespace cliffib
