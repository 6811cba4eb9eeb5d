#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffib {

/// Exact arithmetic scalars. Rational is always stored canonically
/// (positive denominator, reduced); gmp guarantees this for all
/// arithmetic results.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Rational rational_from_string(const std::string& s) {
  Rational x;
  if (x.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  x.canonicalize();
  if (x.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return x;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Integer& x) { return x.get_str(); }

/// gmp's two-argument constructor does not reduce; this one does.
inline Rational make_rational(long num, long den) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

/// Deterministic seeded integer draws in [-bound, bound].
/// std::uniform_int_distribution is implementation-defined, so reports that
/// must be byte-identical across platforms use this instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // splitmix64; stable across platforms and standard libraries.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// uniform integer in [-bound, bound]
  long integer(long bound) {
    return static_cast<long>(below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
  }

  Rational rational(long bound) { return Rational(integer(bound)); }

  /// nonzero integer in [-bound, bound]
  long nonzero_integer(long bound) {
    long v = 0;
    while (v == 0) v = integer(bound);
    return v;
  }

 private:
  std::uint64_t state_;
};

struct input_error : std::runtime_error {
  std::string code;
  input_error(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// A mathematical invariant the theory guarantees failed to hold; always a bug.
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cliffib

namespace Eigen {

template <>
struct NumTraits<cliffib::Rational> : GenericNumTraits<cliffib::Rational> {
  typedef cliffib::Rational Real;
  typedef cliffib::Rational NonInteger;
  typedef cliffib::Rational Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 160,
    MulCost = 120
  };
};

}  // namespace Eigen

namespace cliffib {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = DenseMatrix<Rational>;
using QVector = DenseVector<Rational>;
using Index = Eigen::Index;

inline QVector unit_vector(Index dim, Index i) {
  QVector v = QVector::Zero(dim);
  v(i) = 1;
  return v;
}

}  // namespace cliffib
