#pragma once

#include "cliffib/clifford.hpp"

#include <memory>
#include <optional>

namespace cliffib {

/// The parity modules B_k over the even Clifford algebra, realized at a
/// rational specialization. Over a point the twist only matters through its
/// parity; the integer label is kept for degree bookkeeping. Both module
/// structures are stored: B_k is a bimodule over the even part.
struct B0Module {
  std::shared_ptr<const CliffordAlgebra> algebra;
  Index space_dim = 0;
  int twist = 0;
  std::vector<Subset> basis;                // monomials spanning the part
  std::vector<QMatrix> right_action;        // one matrix per even-part basis element
  std::vector<QMatrix> left_action;
  std::vector<Index> generator_indices;     // even-basis indices of the pair generators
};

B0Module build_Bk(std::shared_ptr<const CliffordAlgebra> algebra, int k);

/// Exact check that the stored action matrices define a unital associative
/// action (unit and generator pairs, plus random pairs).
bool action_consistent(const B0Module& m, Rng& rng, int random_pairs = 10);

struct TensorResult {
  Index dimension = 0;
  B0Module module;                  // induced module, right action through the N side
  std::optional<QMatrix> isomorphism;  // intertwiner onto the expected twist module
  bool isomorphism_verified = false;
};

/// M ⊗_{B0} N as the exact coequalizer of the two generator actions.
/// When find_expected_twist is set, searches for an explicit invertible
/// intertwiner onto B_{M.twist + N.twist}.
TensorResult tensor_over_B0(const B0Module& m, const B0Module& n, Rng& rng,
                            bool find_expected_twist = true);

struct HomResult {
  Index dimension = 0;
  std::vector<QMatrix> basis;  // intertwiners M -> N
};

HomResult hom_over_B0(const B0Module& m, const B0Module& n);

/// Dimension identity between a twisted parity module and the dual graded
/// piece of the homogeneous Clifford algebra in complementary degree, valid
/// for twists <= 1: both sides list the same exterior-power factors.
struct TwistIdentityReport {
  Index n = 0;
  long k = 0;
  Integer dim_bk;      // 2^{n-1}
  Integer dim_fb;      // sum of C(n, n-k-2j)
  bool equal = false;
  // matched exterior factors: (p, n-p) with Lambda^p from B_k and
  // Lambda^{n-p} from the dual side
  std::vector<std::pair<Index, Index>> factor_pairs;
};

TwistIdentityReport determinant_twist_identity(Index n, long k);

/// Splitting test for the evaluation surjection from a free module; exact
/// and complete: solvable iff the module is projective over the even part.
bool is_projective_over_B0(const B0Module& m);

}  // namespace cliffib
