#pragma once

#include "cliffib/linalg.hpp"
#include "cliffib/modp.hpp"

#include <string>
#include <vector>

namespace cliffib {

/// A quadratic algebra T(U)/<R>, R a subspace of U⊗U. Relation vectors are
/// columns in the basis e_i⊗e_j with index i*gen_dim + j; the constructor
/// reduces them to an independent set.
struct QuadraticPresentation {
  Index gen_dim = 0;
  QMatrix relations;  // gen_dim^2 x r, independent columns

  Index relation_count() const { return relations.cols(); }
};

QuadraticPresentation make_presentation(Index gen_dim, const QMatrix& relations);

/// Coordinate algebra of the quadric of a rational gram matrix: relations
/// are the antisymmetric tensors plus the span of the form itself.
/// SIGMA_ZERO when the gram matrix vanishes.
QuadraticPresentation build_A_sigma(const QMatrix& gram);

/// Quadratic dual: relations = annihilator of the relation span under
/// <x⊗y, xi⊗eta> = xi(x) eta(y).
QuadraticPresentation quadratic_dual(const QuadraticPresentation& p);

struct TowerLimits {
  // resource guard: gen_dim^degree may not exceed this
  double tensor_cap = 1e8;
  Index dim_cap = 100000;
};

/// Degree tower of a quadratic algebra: per-degree dimensions with the
/// multiplication data needed by every graded computation here.
///   mu[k]   : A_{k-1}⊗U -> A_k   (right multiplication, quotient map)
///   iota[k] : A_k -> A_{k-1}⊗U   (section of mu[k])
///   lmul[k] : U⊗A_k -> A_{k+1}   (left multiplication)
/// Coordinates: (a, u) -> a*g + u and (u, a) -> u*dim_k + a.
struct Tower {
  Index g = 0;
  std::vector<Index> dims;            // 0..max_degree
  std::vector<SparseQ> mu;            // index k, valid k >= 1
  std::vector<SparseQ> mu_t;          // transposes
  std::vector<SparseQ> iota;          // index k, valid k >= 1
  std::vector<SparseQ> lmul;          // index k: U⊗A_k -> A_{k+1}, k+1 <= max
  std::vector<SparseQ> lmul_t;
  std::vector<std::vector<std::string>> labels;  // per-degree basis labels (may be empty)

  Index max_degree() const { return static_cast<Index>(dims.size()) - 1; }
  Index dim(Index k) const { return (k < 0 || k > max_degree()) ? 0 : dims[k]; }
};

/// Exact span/kernel construction degree by degree; works for every
/// presentation.
Tower build_tower(const QuadraticPresentation& p, Index max_degree,
                  const TowerLimits& limits = {});

/// Monomial normal-form tower for quadric coordinate algebras: a single
/// polynomial is its own Groebner basis, so the degree-k basis is the set of
/// monomials not divisible by the grlex leading term of the form.
Tower build_sigma_tower(const QMatrix& gram, Index max_degree,
                        const TowerLimits& limits = {});

/// Multiplication matrix A_p⊗A_q -> A_{p+q} (coordinates (a,b) -> a*dim_q+b).
SparseQ product_matrix(const Tower& t, Index p, Index q);

struct GradedDims {
  std::vector<Index> dims;
  std::vector<std::vector<std::string>> basis_labels;
};

GradedDims graded_dims(const QuadraticPresentation& p, Index max_degree,
                       const TowerLimits& limits = {});

Integer binomial(Index n, Index k);

/// dim A_k of the quadric coordinate algebra: binomial cross-check value.
Integer quadric_dim(Index n, Index k);
/// dim B_k of the homogeneous Clifford algebra: sum of C(n, k-2j).
Integer clifford_graded_dim(Index n, Index k);

}  // namespace cliffib
