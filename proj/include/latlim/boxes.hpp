#pragma once

#include <vector>

#include "latlim/errors.hpp"
#include "latlim/types.hpp"

namespace latlim {

/// All vertices of the order interval [0, c] for c >= 0. Only the support of
/// c branches, so there are exactly 2^|support(c)| vertices; each agrees with
/// c on a subset of the support and vanishes elsewhere. Throws SupportTooLarge
/// when 2^|support| exceeds `cap` (callers fall back to sampling).
inline std::vector<RatVec> box_vertices(const RatVec& c, std::uint64_t cap) {
  std::vector<Index> support;
  for (Index i = 0; i < c.size(); ++i) {
    if (c(i) < 0) throw PreconditionViolated("box_vertices needs c >= 0");
    if (c(i) > 0) support.push_back(i);
  }
  const std::size_t s = support.size();
  if (s >= 64 || (std::uint64_t{1} << s) > cap)
    throw SupportTooLarge("2^" + std::to_string(s) + " vertices exceed cap");
  std::vector<RatVec> out;
  out.reserve(std::size_t{1} << s);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    RatVec v = RatVec::Zero(c.size());
    for (std::size_t b = 0; b < s; ++b)
      if (mask & (std::uint64_t{1} << b)) v(support[b]) = c(support[b]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace latlim
