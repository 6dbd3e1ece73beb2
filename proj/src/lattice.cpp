#include "latlim/lattice.hpp"

namespace latlim {

Index rank(RatMat m) {
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index pivot = -1;
    for (Index i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(r));
    const Rat inv = 1 / m(r, c);
    for (Index j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& u) {
  if (basis.empty()) return is_zero(u);
  const Index dim = basis.front().size();
  RatMat with(dim, static_cast<Index>(basis.size()) + 1);
  RatMat without(dim, static_cast<Index>(basis.size()));
  for (Index k = 0; k < static_cast<Index>(basis.size()); ++k) {
    with.col(k) = basis[static_cast<std::size_t>(k)];
    without.col(k) = basis[static_cast<std::size_t>(k)];
  }
  with.col(static_cast<Index>(basis.size())) = u;
  return rank(std::move(with)) == rank(std::move(without));
}

IdealVerdict is_ideal(Index dim, const std::vector<RatVec>& basis) {
  for (const RatVec& v : basis)
    if (v.size() != dim) throw DimensionMismatch("basis vector of wrong dimension");

  // A subspace V is an ideal iff v_i e_i lies in V for every v in V and every
  // coordinate i; it then equals the full subspace on its combined support.
  // Checking the generators suffices: if all their coordinate components stay
  // in the span, the span contains every e_i of the support.
  IdealVerdict out;
  for (const RatVec& v : basis) {
    for (Index i = 0; i < dim; ++i) {
      if (v(i) == 0) continue;
      RatVec u = RatVec::Zero(dim);
      u(i) = v(i);
      if (!in_span(basis, u)) {
        out.holds = false;
        out.violating_v = v;
        out.dominated_u = std::move(u);
        return out;
      }
    }
  }
  out.holds = true;
  IdealDescriptor d;
  d.dim = dim;
  for (const RatVec& v : basis)
    for (Index i = 0; i < dim; ++i)
      if (v(i) != 0) d.support.insert(i);
  out.ideal = std::move(d);
  return out;
}

}  // namespace latlim
