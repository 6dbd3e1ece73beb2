#pragma once

#include <Eigen/Core>

#include <string>

#include "latlim/rational.hpp"

namespace latlim {

using Index = Eigen::Index;

using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

template <typename DA, typename DB>
bool exactly_equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename D>
bool is_zero(const Eigen::MatrixBase<D>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) return false;
  return true;
}

template <typename D>
bool is_nonnegative(const Eigen::MatrixBase<D>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) < 0) return false;
  return true;
}

inline RatVec rat_vec(std::initializer_list<Rat> entries) {
  RatVec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const Rat& q : entries) v(i++) = q;
  return v;
}

inline std::string vec_to_string(const RatVec& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v(i));
  }
  out += ")";
  return out;
}

inline std::string mat_to_string(const RatMat& m) {
  std::string out = "[";
  for (Index r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += rat_to_string(m(r, c));
    }
  }
  out += "]";
  return out;
}

}  // namespace latlim
