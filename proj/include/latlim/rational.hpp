#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>

#include "latlim/errors.hpp"

namespace latlim {

/// Exact rational scalar. GMP keeps values canonical (gcd(num,den)=1, den>0)
/// under arithmetic; only raw string/pair construction needs an explicit
/// canonicalize, which the helpers below perform.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw ParseError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "n", "-n", or "n/d". Never accepts floats.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.find_first_not_of("0123456789/-+") != std::string::npos)
    throw ParseError("bad rational literal: " + s);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

/// Canonical serialization: "n" or "n/d" with d > 1.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline int sign(const Rat& q) { return sgn(q); }

}  // namespace latlim

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
