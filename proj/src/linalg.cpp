#include "cliffib/linalg.hpp"

#include <algorithm>

namespace cliffib {

Rref rref(const QMatrix& m) {
  Rref out;
  out.mat = m;
  QMatrix& a = out.mat;
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    // prefer short pivot entries to limit coefficient growth
    Index piv = -1;
    size_t best = 0;
    for (Index i = r; i < rows; ++i) {
      if (is_zero(a(i, c))) continue;
      size_t sz = mpz_size(a(i, c).get_num_mpz_t()) + mpz_size(a(i, c).get_den_mpz_t());
      if (piv < 0 || sz < best) { piv = i; best = sz; }
    }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const Rational inv = Rational(1) / a(r, c);
    for (Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const Rational f = a(i, c);
      for (Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const Index cols = m.cols();
  std::vector<QVector> basis;
  if (cols == 0) return basis;
  if (m.rows() == 0) {
    for (Index j = 0; j < cols; ++j) basis.push_back(unit_vector(cols, j));
    return basis;
  }
  Rref e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (Index c : e.pivot_cols) is_pivot[c] = true;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v = QVector::Zero(cols);
    v(f) = 1;
    for (Index r = 0; r < e.rank(); ++r) v(e.pivot_cols[r]) = -e.mat(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix kernel_matrix(const QMatrix& m) {
  auto vs = kernel_basis(m);
  QMatrix k(m.cols(), static_cast<Index>(vs.size()));
  for (Index j = 0; j < k.cols(); ++j) k.col(j) = vs[j];
  return k;
}

namespace {

// integer matrix with cleared row denominators; rank/det unchanged up to
// the recorded factor
DenseMatrix<Integer> clear_rows(const QMatrix& m, Rational* det_factor) {
  DenseMatrix<Integer> z(m.rows(), m.cols());
  Rational factor = 1;
  for (Index i = 0; i < m.rows(); ++i) {
    Integer lcm = 1;
    for (Index j = 0; j < m.cols(); ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (Index j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * lcm;
      z(i, j) = v.get_num();
    }
    factor *= lcm;
  }
  if (det_factor) *det_factor = factor;
  return z;
}

// Two-step fraction-free elimination; returns rank, accumulates the
// determinant sign/pivot when requested.
Index bareiss(DenseMatrix<Integer>& a, Integer* det, int* sign) {
  const Index rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  Index r = 0;
  int sg = 1;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    size_t best = 0;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      size_t sz = mpz_size(a(i, c).get_mpz_t());
      if (piv < 0 || sz < best) { piv = i; best = sz; }
    }
    if (piv < 0) { if (det) *det = 0; continue; }
    if (piv != r) { a.row(piv).swap(a.row(r)); sg = -sg; }
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        Integer t = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  if (det) *det = (r == std::min(rows, cols)) ? prev : Integer(0);
  if (sign) *sign = sg;
  return r;
}

}  // namespace

Index rank_bareiss(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto z = clear_rows(m, nullptr);
  return bareiss(z, nullptr, nullptr);
}

Rational det_bareiss(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  if (m.rows() == 0) return 1;
  Rational factor;
  auto z = clear_rows(m, &factor);
  Integer d;
  int sign = 1;
  Index r = bareiss(z, &d, &sign);
  if (r < m.rows()) return 0;
  return Rational(sign * d) / factor;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  QMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Rref e = rref(aug);
  QVector x = QVector::Zero(a.cols());
  for (Index r = 0; r < e.rank(); ++r) {
    Index c = e.pivot_cols[r];
    if (c == a.cols()) return std::nullopt;  // pivot in the rhs column
    x(c) = e.mat(r, a.cols());
  }
  return x;
}

QMatrix left_inverse(const QMatrix& a) {
  QMatrix aug(a.rows(), a.cols() + a.rows());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(a.rows()) = QMatrix::Identity(a.rows(), a.rows());
  Rref e = rref(aug);
  for (Index j = 0; j < a.cols(); ++j)
    if (j >= e.rank() || e.pivot_cols[j] != j)
      throw std::invalid_argument("left_inverse: columns are dependent");
  return e.mat.block(0, a.cols(), a.cols(), a.rows());
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out = QMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

QMatrix kron_identity_left(Index id_dim, const QMatrix& b) {
  QMatrix out = QMatrix::Zero(id_dim * b.rows(), id_dim * b.cols());
  for (Index i = 0; i < id_dim; ++i)
    out.block(i * b.rows(), i * b.cols(), b.rows(), b.cols()) = b;
  return out;
}

QMatrix kron_identity_right(const QMatrix& a, Index id_dim) {
  QMatrix out = QMatrix::Zero(a.rows() * id_dim, a.cols() * id_dim);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (Index k = 0; k < id_dim; ++k) out(i * id_dim + k, j * id_dim + k) = a(i, j);
    }
  return out;
}

SpanIntersection intersect_spans(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("intersect_spans: ambient mismatch");
  QMatrix joint(a.rows(), a.cols() + b.cols());
  joint.leftCols(a.cols()) = a;
  joint.rightCols(b.cols()) = -b;
  QMatrix null = kernel_matrix(joint);
  SpanIntersection out;
  out.in_a = null.topRows(a.cols());
  out.basis = a * out.in_a;
  return out;
}

}  // namespace cliffib
