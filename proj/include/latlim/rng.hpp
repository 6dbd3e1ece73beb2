#pragma once

#include <cstdint>
#include <vector>

#include "latlim/types.hpp"

namespace latlim {

/// Deterministic splitmix64 generator. Verdicts produced from sampling must be
/// reproducible byte-for-byte across platforms, so we do not rely on the
/// standard library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  long int_in(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Small rational with numerator in [-max_num, max_num], denominator in [1, max_den].
  Rat rat_in(long max_num = 4, long max_den = 3) {
    return rat(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Rat nonneg_rat(long max_num = 4, long max_den = 3) {
    return rat(int_in(0, max_num), int_in(1, max_den));
  }

  Rat positive_rat(long max_num = 4, long max_den = 3) {
    return rat(int_in(1, max_num), int_in(1, max_den));
  }

  RatVec vec(Index n, long max_num = 4, long max_den = 3) {
    RatVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = rat_in(max_num, max_den);
    return v;
  }

  RatVec nonneg_vec(Index n, long max_num = 4, long max_den = 3) {
    RatVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = nonneg_rat(max_num, max_den);
    return v;
  }

  RatVec positive_vec(Index n, long max_num = 4, long max_den = 3) {
    RatVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = positive_rat(max_num, max_den);
    return v;
  }

  RatMat mat(Index rows, Index cols, long max_num = 4, long max_den = 3) {
    RatMat m(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = rat_in(max_num, max_den);
    return m;
  }

  RatMat nonneg_mat(Index rows, Index cols, long max_num = 4, long max_den = 3) {
    RatMat m(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = nonneg_rat(max_num, max_den);
    return m;
  }

  /// Nonnegative matrix with at most one nonzero per column; such matrices are
  /// exactly the interval preserving ones on coordinate lattices.
  RatMat column_singleton_mat(Index rows, Index cols, long max_num = 4, long max_den = 3) {
    RatMat m = RatMat::Zero(rows, cols);
    for (Index c = 0; c < cols; ++c) {
      // roughly one column in five stays zero
      if (below(5) == 0) continue;
      m(static_cast<Index>(below(static_cast<std::uint64_t>(rows))), c) =
          positive_rat(max_num, max_den);
    }
    return m;
  }

 private:
  std::uint64_t state_;
};

}  // namespace latlim
