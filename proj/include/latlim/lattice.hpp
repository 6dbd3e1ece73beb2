#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "latlim/errors.hpp"
#include "latlim/types.hpp"

namespace latlim {

// Coordinatewise lattice structure of Q^n. Free functions accept arbitrary
// Eigen expressions and return materialized vectors.

namespace detail {
template <typename DA, typename DB>
void require_same_dim(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("lattice operands differ in dimension");
}
}  // namespace detail

template <typename DA, typename DB>
RatVec sup(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  detail::require_same_dim(x, y);
  return x.cwiseMax(y);
}

template <typename DA, typename DB>
RatVec inf(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  detail::require_same_dim(x, y);
  return x.cwiseMin(y);
}

template <typename D>
RatVec abs(const Eigen::MatrixBase<D>& x) {
  return x.cwiseAbs();
}

template <typename D>
RatVec pos_part(const Eigen::MatrixBase<D>& x) {
  return x.cwiseMax(Rat(0));
}

template <typename D>
RatVec neg_part(const Eigen::MatrixBase<D>& x) {
  return (-x).cwiseMax(Rat(0));
}

template <typename DA, typename DB>
bool leq(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  detail::require_same_dim(x, y);
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) > y(i)) return false;
  return true;
}

struct OrderInterval {
  RatVec lower;
  RatVec upper;

  OrderInterval(RatVec lo, RatVec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (!leq(lower, upper)) throw PreconditionViolated("order interval needs lower <= upper");
  }
  bool contains(const RatVec& x) const { return leq(lower, x) && leq(x, upper); }
};

/// Splits 0 <= x <= a + b into x = y + z with y in [0,a], z in [0,b]
/// (coordinatewise y = min(x, a)). This is the Riesz decomposition that
/// justifies testing interval preservation on basis vectors only.
inline std::pair<RatVec, RatVec> riesz_decompose(const RatVec& x, const RatVec& a,
                                                 const RatVec& b) {
  detail::require_same_dim(x, a);
  detail::require_same_dim(x, b);
  if (!is_nonnegative(a) || !is_nonnegative(b) || !is_nonnegative(x) || !leq(x, a + b))
    throw PreconditionViolated("riesz_decompose needs 0 <= x <= a+b, a,b >= 0");
  RatVec y = inf(x, a);
  RatVec z = x - y;
  return {std::move(y), std::move(z)};
}

/// Exact rank of a rational matrix by Gaussian elimination.
Index rank(RatMat m);

/// Whether u lies in the linear span of the given vectors.
bool in_span(const std::vector<RatVec>& basis, const RatVec& u);

struct IdealDescriptor {
  Index dim = 0;
  std::set<Index> support;
};

struct IdealVerdict {
  bool holds = false;
  std::optional<IdealDescriptor> ideal;  // when holds
  // When not an ideal: v in the span dominates u = v_i e_i outside the span.
  RatVec violating_v;
  RatVec dominated_u;
};

/// Decides whether span(basis) is an ideal of Q^dim with coordinate order.
/// Ideals of the coordinate lattice are exactly the coordinate-support
/// subspaces, so the span is canonicalized and compared against the subspace
/// on its combined support.
IdealVerdict is_ideal(Index dim, const std::vector<RatVec>& basis);

}  // namespace latlim
