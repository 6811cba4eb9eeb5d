#pragma once

#include "cliffib/rational.hpp"

#include <optional>
#include <vector>

namespace cliffib {

/// Reduced row echelon form of M together with the pivot columns.
struct Rref {
  QMatrix mat;
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

Rref rref(const QMatrix& m);

/// Exact right kernel, one column per basis vector. rank(M) = cols - count.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Kernel as a matrix whose columns form the basis (cols x nullity).
QMatrix kernel_matrix(const QMatrix& m);

/// Fraction-free (Bareiss) rank of an exact matrix. Row denominators are
/// cleared first; pivoting keeps intermediate entries at minor size.
Index rank_bareiss(const QMatrix& m);

/// Exact determinant (Bareiss). Square input required.
Rational det_bareiss(const QMatrix& m);

/// Solve A x = b exactly; empty when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Left inverse of a full-column-rank matrix: L a = Id. Throws if columns
/// are dependent.
QMatrix left_inverse(const QMatrix& a);

/// Kronecker product with row index (i_a, i_b) -> i_a * b.rows() + i_b.
QMatrix kron(const QMatrix& a, const QMatrix& b);
QMatrix kron_identity_left(Index id_dim, const QMatrix& b);   // I_id ⊗ b
QMatrix kron_identity_right(const QMatrix& a, Index id_dim);  // a ⊗ I_id

/// Basis (as columns) of the intersection of the column spans of a and b;
/// both must have independent columns. Also returns the coefficients
/// expressing the basis in a's columns.
struct SpanIntersection {
  QMatrix basis;      // ambient coordinates
  QMatrix in_a;       // basis = a * in_a
};
SpanIntersection intersect_spans(const QMatrix& a, const QMatrix& b);

inline bool is_zero_matrix(const QMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

}  // namespace cliffib
