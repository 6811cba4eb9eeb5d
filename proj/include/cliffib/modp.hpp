#pragma once

#include "cliffib/rational.hpp"

#include <cstdint>
#include <vector>

namespace cliffib {

/// Sparse column-major exact matrix used for the large graded differentials.
/// Entries are rationals but in practice small integers; kept sparse so that
/// composing consecutive differentials stays cheap.
struct SparseQ {
  Index rows = 0, cols = 0;
  // per column: (row, value)
  std::vector<std::vector<std::pair<Index, Rational>>> col;

  SparseQ() = default;
  SparseQ(Index r, Index c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}

  void add(Index r, Index c, const Rational& v) {
    if (!cliffib::is_zero(v)) col[static_cast<size_t>(c)].emplace_back(r, v);
  }
  void compress();  // merge duplicate row entries, drop zeros

  QMatrix dense() const;
  static SparseQ from_dense(const QMatrix& m);

  /// this * other, exact.
  SparseQ multiply(const SparseQ& other) const;
  bool is_zero() const;
  std::size_t nonzeros() const;
};

SparseQ transpose(const SparseQ& m);

/// Rank of an exact matrix reduced modulo a word-size prime. Always a lower
/// bound for the rank over Q. Throws modp_bad_prime when an entry's
/// denominator vanishes mod p.
struct modp_bad_prime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Index rank_mod_p(const SparseQ& m, std::uint32_t p);

/// Rank together with the leftmost independent column set (the pivot
/// profile of Gaussian elimination without column swaps).
struct RankProfile {
  Index rank = 0;
  std::vector<Index> pivot_cols;
};
RankProfile rank_profile_mod_p(const SparseQ& m, std::uint32_t p);

/// Exactness certificate for a finite complex
///   0 -> C_m --D_m--> C_{m-1} -> ... --D_1--> C_0
/// given by the maps D_k (D_k : C_k -> C_{k-1}).
///
/// Sound for exactness claims: a CERTIFIED verdict proves the Q-ranks equal
/// the returned values and that the complex is exact at the positions marked
/// exact. Composing to zero is checked exactly; modular ranks then pin the
/// exact ranks by rank-nullity. When the modular equalities fail after
/// `prime_retries` primes, falls back to exact Bareiss ranks (always
/// conclusive, may be slow).
struct ComplexExactness {
  std::vector<Index> dims;          // dims[k] = dim C_k, k = 0..m
  std::vector<Index> ranks;         // ranks[k] = rank D_k, k = 1..m (index k)
  std::vector<bool> exact_at;       // exact_at[k], k = 0..m: ker D_k == im D_{k+1}
  bool d_squared_zero = true;
  bool certified = false;           // ranks certified exact (not just mod-p)
  bool used_fallback = false;
};

ComplexExactness verify_complex(const std::vector<SparseQ>& maps, std::uint64_t seed,
                                int prime_retries = 3);

/// Rank certification for a chain of maps between abstract spaces of the
/// given dimensions (maps may be written in larger ambient row coordinates).
/// The caller attests that consecutive images nest (zero compositions plus
/// membership, both checked exactly on its side); under that hypothesis the
/// modular ranks are squeezed into exact ones position by position.
ComplexExactness certify_chain_ranks(const std::vector<SparseQ>& maps,
                                     const std::vector<Index>& dims,
                                     bool images_nest, std::uint64_t seed,
                                     int prime_retries = 3);

/// Random word-size primes for the certificates (deterministic in seed).
std::uint32_t random_prime(Rng& rng);

}  // namespace cliffib
