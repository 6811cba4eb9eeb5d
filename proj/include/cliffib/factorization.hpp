#pragma once

#include "cliffib/clifford.hpp"
#include "cliffib/quadratic_form.hpp"

#include <vector>

namespace cliffib {

/// Clifford matrix factorization of a quadratic form: multiplication by the
/// generic vector sum x_i e_i between the parity parts gives a pair of
/// matrices of linear forms with psi phi = phi psi = q(x) Id, verified
/// exactly at construction.
struct MatrixFactorization {
  Index n = 0;
  Side side = Side::LEFT;
  std::vector<std::string> vars;       // base parameters then fiber coordinates x1..xn
  std::vector<std::string> base_vars;  // prefix of vars
  PolyMatrix phi;                      // even part -> odd part
  PolyMatrix psi;                      // odd part -> even part
  MultiPoly q;                         // sum G_ij x_i x_j over vars
};

/// Build over a rational gram matrix; entries are linear in x1..xn.
MatrixFactorization build_factorization(const QMatrix& gram, Side side);

/// Build over a polynomial gram matrix; entries live in base vars + fiber
/// coordinates (disjoint name groups enforced).
MatrixFactorization build_factorization(const QuadraticForm& form, Side side);

/// Specialize the base parameters, leaving a factorization over the fiber.
MatrixFactorization specialize_base(const MatrixFactorization& mf,
                                    const std::vector<Rational>& base_point);

/// 2^{n-1} - rank(phi at the point); requires a nonzero point with
/// q(point) = 0 (NOT_ON_QUADRIC otherwise). Base parameters must have been
/// specialized away.
Index cokernel_rank_at(const MatrixFactorization& mf, const QVector& point);

struct PeriodicityPoint {
  QVector point;
  Index coker_phi = 0;        // even -> odd
  Index coker_psi = 0;        // odd -> even
  Index coker_phi_other = 0;  // opposite side factorization
  Index coker_psi_other = 0;
  bool vertex = false;        // point lies in the kernel of the gram matrix
};

struct PeriodicityReport {
  std::vector<PeriodicityPoint> points;
  bool all_equal = true;                 // the four cokernel dims agree pointwise
  bool all_expected = true;              // equal to 2^{n-2}, asserted only off the vertex
};

/// Pointwise shadow of the twist periodicity: both parities and both sides
/// give cokernels of one common dimension, equal to 2^{n-2} away from the
/// vertex of a degenerate form.
PeriodicityReport periodicity_check(const QMatrix& gram, const std::vector<QVector>& points);

struct DeterminantCheck {
  bool full_poly = false;      // determinants expanded symbolically
  bool identity_holds = false;
  Index sample_points = 0;
};

/// det(phi) det(psi) = q^{2^{n-1}}: expanded exactly for n <= 4; above that
/// certified from the verified product identity (determinant
/// multiplicativity) plus exact evaluation at seeded sample points.
DeterminantCheck determinant_identity_check(const MatrixFactorization& mf, Rng& rng,
                                            Index sample_points = 5);

}  // namespace cliffib
