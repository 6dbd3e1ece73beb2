#pragma once

#include <string>
#include <variant>

#include "latlim/epseq.hpp"
#include "latlim/types.hpp"

namespace latlim {

/// An element of some model space: a rational vector (finite-dimensional
/// coordinate lattice) or an eventually periodic sequence.
using Element = std::variant<RatVec, EPSeq>;

enum class FinNorm { Linf, L1, L2 };

/// Descriptor of a computable model space.
struct SpaceDesc {
  enum class Kind { FinDim, Seq } kind = Kind::FinDim;

  // FinDim
  Index dim = 0;
  FinNorm fin_norm = FinNorm::Linf;

  // Seq
  SpaceTag tag;
  /// When positive: the subspace of c of sequences constant from this 1-based
  /// position on (a finite-dimensional sublattice of c, of that dimension).
  Index ctail = 0;

  static SpaceDesc findim(Index dim, FinNorm n = FinNorm::Linf) {
    SpaceDesc d;
    d.kind = Kind::FinDim;
    d.dim = dim;
    d.fin_norm = n;
    return d;
  }
  static SpaceDesc seq(SpaceTag tag) {
    SpaceDesc d;
    d.kind = Kind::Seq;
    d.tag = tag;
    return d;
  }
  static SpaceDesc c_tail(Index i) {
    SpaceDesc d;
    d.kind = Kind::Seq;
    d.tag.kind = SpaceTag::c;
    d.ctail = i;
    return d;
  }

  bool operator==(const SpaceDesc& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::FinDim) return dim == o.dim && fin_norm == o.fin_norm;
    return tag == o.tag && ctail == o.ctail;
  }

  std::string name() const;
};

bool member(const SpaceDesc& space, const Element& x);
NormValue norm(const SpaceDesc& space, const Element& x);
Element zero_element(const SpaceDesc& space);
bool element_eq(const Element& a, const Element& b);
bool element_leq(const Element& a, const Element& b);
Element element_sup(const Element& a, const Element& b);
Element element_inf(const Element& a, const Element& b);
Element element_abs(const Element& a);
Element element_sub(const Element& a, const Element& b);
bool element_is_nonneg(const Element& a);
std::string element_to_string(const Element& a);

}  // namespace latlim
