#pragma once

#include "cliffib/presentation.hpp"

#include <optional>

namespace cliffib {

/// A presentation together with its quadratic dual and both degree towers;
/// every graded verification works off this pair. When the presentation is
/// a quadric coordinate algebra the gram matrix enables the monomial
/// normal-form tower on the A side.
struct TowerPair {
  QuadraticPresentation p;
  QuadraticPresentation dual;
  Tower a;  // tower of p
  Tower b;  // tower of the dual
};

TowerPair make_tower_pair(const QuadraticPresentation& p, Index max_degree,
                          const TowerLimits& limits = {},
                          const QMatrix* sigma_gram = nullptr);

/// Koszul differential piece B*_k ⊗ A_j -> B*_{k-1} ⊗ A_{j+1} (side_a), or
/// with the roles of the towers exchanged (!side_a). The transpose of the
/// dual tower's multiplication peels the last tensor slot; left
/// multiplication pushes it into the partner algebra.
SparseQ koszul_map(const TowerPair& tp, bool side_a, Index k, Index j);

struct StrandVerdict {
  Index degree = 0;
  std::vector<Index> dims;    // C_0 .. C_t
  std::vector<Index> ranks;   // rank of D_k : C_k -> C_{k-1}, index 1..t
  std::vector<bool> exact;    // positions 0..t
  bool d_squared_zero = true;
  bool certified = false;
  bool all_interior_exact = true;  // positions 1..t-1
  bool surjective_onto_c0 = true;  // position 0 (the augmentation strand)
};

StrandVerdict verify_strand(const TowerPair& tp, bool side_a, Index t, std::uint64_t seed);

struct KoszulReport {
  Index max_degree = 0;
  std::vector<Index> dims_a;
  std::vector<Index> dims_dual;
  std::vector<Integer> hilbert_residual;  // h_A(t) h_{A!}(-t) - 1, coefficients
  std::vector<StrandVerdict> complex_a;
  std::vector<StrandVerdict> complex_dual;
  bool residual_zero = true;
  bool all_exact = true;
};

KoszulReport koszul_verify(const TowerPair& tp, Index max_degree, std::uint64_t seed);

/// Truncation module R^k: per-degree dimensions from certified strand ranks,
/// exactness of its left resolution and right resolution up to max_p, and
/// the Euler-characteristic cross-check of the right resolution.
struct TruncationReport {
  Index k = 0;
  std::vector<Index> dims;  // dim R^k_p, p = 0..max_p
  bool left_resolution_exact = true;
  bool right_resolution_exact = true;
  bool euler_consistent = true;
  std::vector<SparseQ> right_resolution_maps;  // strand maps D_k..D_1 at p = max_p
};

TruncationReport truncation_module(const TowerPair& tp, Index k, Index max_p,
                                   std::uint64_t seed);

/// Diagonal resolution ... -> R^1 ⊗ A<-1> -> R^0 ⊗ A -> A_Delta -> 0 checked
/// bidegree by bidegree, with R^0 = A. Requires a swap-stable relation span
/// (every quadric coordinate algebra qualifies); rejected otherwise.
struct BidegreeVerdict {
  Index p = 0, q = 0;
  std::vector<Index> dims;  // A_{p+q}, T_0, ..., T_q
  bool exact = false;
  bool certified = false;
};

struct DiagonalReport {
  Index bound_p = 0, bound_q = 0;
  std::vector<BidegreeVerdict> bidegrees;
  bool all_exact = true;
};

DiagonalReport diagonal_resolution_check(const TowerPair& tp, Index bound_p, Index bound_q,
                                         std::uint64_t seed);

bool relations_swap_stable(const QuadraticPresentation& p);

}  // namespace cliffib
