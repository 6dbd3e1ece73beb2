#pragma once

// Seeded instance generators shared by the unit tests and the acceptance
// suite.

#include <vector>

#include "latlim/maps.hpp"
#include "latlim/rng.hpp"

namespace latlim::testgen {

/// Coordinate-projection matrix keeping the listed rows.
inline RatMat projection(Index from_dim, const std::vector<Index>& keep) {
  RatMat p = RatMat::Zero(static_cast<Index>(keep.size()), from_dim);
  for (Index r = 0; r < static_cast<Index>(keep.size()); ++r)
    p(r, keep[static_cast<std::size_t>(r)]) = 1;
  return p;
}

/// Commuting square with a random interval preserving top map and coordinate
/// quotients on both sides. The kept domain coordinates always include every
/// column feeding a kept codomain coordinate, which makes the square commute.
inline CommSquare pushdown_instance(Rng& rng) {
  const Index n = static_cast<Index>(rng.int_in(2, 5));
  const Index m = static_cast<Index>(rng.int_in(2, 5));
  const RatMat psi = rng.column_singleton_mat(m, n);

  std::vector<Index> keep_f;
  for (Index r = 0; r < m; ++r)
    if (rng.below(2) == 0) keep_f.push_back(r);
  if (keep_f.empty()) keep_f.push_back(static_cast<Index>(rng.below(m)));

  std::vector<Index> keep_e;
  for (Index c = 0; c < n; ++c) {
    bool feeds_kept = false;
    for (Index r : keep_f) feeds_kept = feeds_kept || psi(r, c) != 0;
    if (feeds_kept || rng.below(3) == 0) keep_e.push_back(c);
  }
  if (keep_e.empty()) keep_e.push_back(static_cast<Index>(rng.below(n)));

  RatMat bottom(static_cast<Index>(keep_f.size()), static_cast<Index>(keep_e.size()));
  for (Index r = 0; r < bottom.rows(); ++r)
    for (Index c = 0; c < bottom.cols(); ++c)
      bottom(r, c) = psi(keep_f[static_cast<std::size_t>(r)],
                         keep_e[static_cast<std::size_t>(c)]);

  CommSquare sq;
  sq.top = LatticeMap::from_matrix(psi);
  sq.left = LatticeMap::from_matrix(projection(n, keep_e));
  sq.right = LatticeMap::from_matrix(projection(m, keep_f));
  sq.bottom = LatticeMap::from_matrix(bottom);
  return sq;
}

struct FactoringInstance {
  std::vector<LatticeMap> legs;
  LatticeMap chi;
};

/// Coordinate inclusion legs covering every coordinate, plus a random chi
/// (interval preserving, generic nonnegative, or with a negative entry).
inline FactoringInstance factoring_instance(Rng& rng) {
  const Index n = static_cast<Index>(rng.int_in(2, 5));
  const Index m = static_cast<Index>(rng.int_in(1, 4));
  FactoringInstance inst;
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  const int leg_count = static_cast<int>(rng.int_in(1, 3));
  for (int l = 0; l < leg_count + 1; ++l) {
    std::vector<Index> cols;
    for (Index c = 0; c < n; ++c) {
      const bool force = l == leg_count && !covered[static_cast<std::size_t>(c)];
      if (force || rng.below(2) == 0) {
        cols.push_back(c);
        covered[static_cast<std::size_t>(c)] = true;
      }
    }
    if (cols.empty()) continue;
    inst.legs.push_back(LatticeMap::from_matrix(RatMat(projection(n, cols).transpose())));
  }
  switch (rng.below(3)) {
    case 0: inst.chi = LatticeMap::from_matrix(rng.column_singleton_mat(m, n)); break;
    case 1: inst.chi = LatticeMap::from_matrix(rng.nonneg_mat(m, n)); break;
    default: {
      RatMat c = rng.nonneg_mat(m, n);
      c(static_cast<Index>(rng.below(m)), static_cast<Index>(rng.below(n))) = rat(-1);
      inst.chi = LatticeMap::from_matrix(std::move(c));
    }
  }
  return inst;
}

}  // namespace latlim::testgen
