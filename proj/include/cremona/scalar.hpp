// Exact rational scalars and the Eigen glue needed to put them in dense
// fixed-size matrices.
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace cremona {

using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" form; integers are written without a denominator.
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Bit length of the larger of |numerator| and denominator.
std::size_t bit_length(const Scalar& s);

Scalar pow_scalar(const Scalar& s, int e);

}  // namespace cremona

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
