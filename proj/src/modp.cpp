#include "cliffib/modp.hpp"

#include "cliffib/linalg.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace cliffib {

void SparseQ::compress() {
  for (auto& c : col) {
    if (c.empty()) continue;
    std::sort(c.begin(), c.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Index, Rational>> merged;
    for (auto& e : c) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return cliffib::is_zero(e.second); }),
                 merged.end());
    c = std::move(merged);
  }
}

QMatrix SparseQ::dense() const {
  QMatrix m = QMatrix::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (const auto& [r, v] : col[static_cast<size_t>(j)]) m(r, j) += v;
  return m;
}

SparseQ SparseQ::from_dense(const QMatrix& m) {
  SparseQ s(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!cliffib::is_zero(m(i, j))) s.col[static_cast<size_t>(j)].emplace_back(i, m(i, j));
  return s;
}

SparseQ SparseQ::multiply(const SparseQ& other) const {
  if (cols != other.rows) throw std::invalid_argument("sparse multiply: shape mismatch");
  SparseQ out(rows, other.cols);
  std::vector<Rational> acc(static_cast<size_t>(rows), Rational(0));
  std::vector<Index> touched;
  for (Index j = 0; j < other.cols; ++j) {
    touched.clear();
    for (const auto& [t, bv] : other.col[static_cast<size_t>(j)]) {
      for (const auto& [r, av] : col[static_cast<size_t>(t)]) {
        if (cliffib::is_zero(acc[static_cast<size_t>(r)])) touched.push_back(r);
        acc[static_cast<size_t>(r)] += av * bv;
      }
    }
    auto& out_col = out.col[static_cast<size_t>(j)];
    std::sort(touched.begin(), touched.end());
    for (Index r : touched) {
      if (!cliffib::is_zero(acc[static_cast<size_t>(r)])) out_col.emplace_back(r, acc[static_cast<size_t>(r)]);
      acc[static_cast<size_t>(r)] = 0;
    }
  }
  return out;
}

bool SparseQ::is_zero() const {
  for (const auto& c : col)
    for (const auto& [r, v] : c)
      if (!cliffib::is_zero(v)) return false;
  return true;
}

std::size_t SparseQ::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : col) n += c.size();
  return n;
}

SparseQ transpose(const SparseQ& m) {
  SparseQ out(m.cols, m.rows);
  for (Index j = 0; j < m.cols; ++j)
    for (const auto& [r, v] : m.col[static_cast<size_t>(j)]) out.add(j, r, v);
  out.compress();
  return out;
}

namespace {

bool small_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended euclid
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_rational(const Rational& x, std::uint32_t p) {
  std::uint64_t num = mpz_fdiv_ui(x.get_num_mpz_t(), p);
  std::uint64_t den = mpz_fdiv_ui(x.get_den_mpz_t(), p);
  if (den == 0) throw modp_bad_prime("denominator vanishes mod p");
  return num * mod_inverse(den, p) % p;
}

}  // namespace

std::uint32_t random_prime(Rng& rng) {
  // 20-bit primes: lazy-reduction elimination then never overflows uint64
  // (pivot count < 2^13, per-step growth < 2^40).
  for (;;) {
    std::uint32_t c = static_cast<std::uint32_t>(rng.below(1u << 19)) | (1u << 19) | 1u;
    if (small_prime(c)) return c;
  }
}

Index rank_mod_p(const SparseQ& m, std::uint32_t p) {
  return rank_profile_mod_p(m, p).rank;
}

RankProfile rank_profile_mod_p(const SparseQ& m, std::uint32_t p) {
  const Index rows = m.rows, cols = m.cols;
  if (rows == 0 || cols == 0) return {};
  // row-major, values kept partially unreduced (bounded by p^2 * pivots)
  std::vector<std::uint64_t> a(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0);
  for (Index j = 0; j < cols; ++j)
    for (const auto& [r, v] : m.col[static_cast<size_t>(j)]) {
      auto& slot = a[static_cast<size_t>(r) * cols + j];
      slot = (slot + reduce_rational(v, p)) % p;
    }
  RankProfile out;
  Index& rank = out.rank;
  for (Index c = 0; c < cols && rank < rows; ++c) {
    Index piv = -1;
    for (Index i = rank; i < rows; ++i) {
      auto& e = a[static_cast<size_t>(i) * cols + c];
      e %= p;
      if (e != 0) { piv = i; break; }
    }
    if (piv < 0) continue;
    out.pivot_cols.push_back(c);
    if (piv != rank)
      for (Index j = c; j < cols; ++j)
        std::swap(a[static_cast<size_t>(piv) * cols + j], a[static_cast<size_t>(rank) * cols + j]);
    std::uint64_t* prow = &a[static_cast<size_t>(rank) * cols];
    for (Index j = c; j < cols; ++j) prow[j] %= p;
    const std::uint64_t inv = mod_inverse(prow[c], p);
    for (Index i = rank + 1; i < rows; ++i) {
      std::uint64_t* row = &a[static_cast<size_t>(i) * cols];
      row[c] %= p;
      if (row[c] == 0) continue;
      const std::uint64_t mult = (p - row[c] * inv % p) % p;
      row[c] = 0;
      if (mult == 0) continue;
      for (Index j = c + 1; j < cols; ++j) row[j] += mult * prow[j];
    }
    ++rank;
  }
  return out;
}

ComplexExactness certify_chain_ranks(const std::vector<SparseQ>& maps,
                                     const std::vector<Index>& dims, bool images_nest,
                                     std::uint64_t seed, int prime_retries) {
  const int m = static_cast<int>(maps.size());
  ComplexExactness out;
  out.dims = dims;
  out.ranks.assign(m + 1, 0);
  out.exact_at.assign(m + 1, false);
  out.d_squared_zero = images_nest;
  if (m == 0) return out;
  if (static_cast<int>(dims.size()) != m + 1)
    throw std::invalid_argument("certify_chain_ranks: need one dimension per chain space");
  for (int k = 1; k <= m; ++k)
    if (maps[k - 1].cols != dims[k])
      throw std::invalid_argument("certify_chain_ranks: map shape disagrees with chain dims");

  Rng rng(seed ^ 0xc0ffee);
  std::uint32_t p = random_prime(rng);

  // modular ranks, two at a time
  std::vector<Index> rp(m + 1, 0);
  {
    std::vector<int> todo;
    for (int k = 1; k <= m; ++k) todo.push_back(k);
    std::exception_ptr err;
    auto worker = [&](size_t begin, size_t step) {
      try {
        for (size_t i = begin; i < todo.size(); i += step)
          rp[todo[i]] = rank_mod_p(maps[todo[i] - 1], p);
      } catch (...) { err = std::current_exception(); }
    };
    std::thread t(worker, 1, 2);
    worker(0, 2);
    t.join();
    if (err) std::rethrow_exception(err);
  }

  if (!images_nest) {
    // no squeeze available; fall back to exact ranks outright
    for (int k = 1; k <= m; ++k) out.ranks[k] = rank_bareiss(maps[k - 1].dense());
    out.used_fallback = true;
  } else {
    // downward pass: pin rank(D_k) from rank(D_{k+1}) and the mod-p value
    for (int k = m; k >= 1; --k) {
      Index upper = out.dims[k] - (k == m ? 0 : out.ranks[k + 1]);  // rank D_{m+1} := 0
      Index got = rp[k];
      int retries = prime_retries;
      while (got < upper && retries-- > 0) {
        std::uint32_t p2 = random_prime(rng);
        try {
          got = std::max(got, rank_mod_p(maps[k - 1], p2));
        } catch (const modp_bad_prime&) {}
      }
      if (got == upper) {
        out.ranks[k] = got;  // squeezed: certified exact
      } else if (got > upper) {
        throw invariant_error("modular rank exceeds zero-composition bound");
      } else {
        out.ranks[k] = rank_bareiss(maps[k - 1].dense());
        out.used_fallback = true;
      }
    }
    out.certified = true;
  }

  for (int k = 0; k <= m; ++k) {
    Index incoming = (k < m) ? out.ranks[k + 1] : 0;
    Index kernel = out.dims[k] - out.ranks[k];  // rank D_0 := 0
    out.exact_at[k] = (incoming == kernel);
  }
  return out;
}

ComplexExactness verify_complex(const std::vector<SparseQ>& maps, std::uint64_t seed,
                                int prime_retries) {
  const int m = static_cast<int>(maps.size());
  if (m == 0) return ComplexExactness{};
  std::vector<Index> dims(m + 1);
  dims[0] = maps[0].rows;
  for (int k = 1; k <= m; ++k) {
    dims[k] = maps[k - 1].cols;
    if (k < m && maps[k].rows != dims[k])
      throw std::invalid_argument("verify_complex: chain shape mismatch");
  }
  bool d2 = true;
  for (int k = 0; k + 1 < m; ++k)
    if (!maps[k].multiply(maps[k + 1]).is_zero()) d2 = false;
  return certify_chain_ranks(maps, dims, d2, seed, prime_retries);
}

}  // namespace cliffib
