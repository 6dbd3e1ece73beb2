#include "latlim/spaces.hpp"

#include "latlim/errors.hpp"
#include "latlim/lattice.hpp"

namespace latlim {

std::string SpaceDesc::name() const {
  if (kind == Kind::FinDim) {
    std::string n = "Q^" + std::to_string(dim);
    switch (fin_norm) {
      case FinNorm::Linf: n += "(sup)"; break;
      case FinNorm::L1: n += "(l1)"; break;
      case FinNorm::L2: n += "(l2)"; break;
    }
    return n;
  }
  if (ctail > 0) return "c_" + std::to_string(ctail);
  return tag.name();
}

bool member(const SpaceDesc& space, const Element& x) {
  if (space.kind == SpaceDesc::Kind::FinDim) {
    const auto* v = std::get_if<RatVec>(&x);
    return v && v->size() == space.dim;
  }
  const auto* s = std::get_if<EPSeq>(&x);
  if (!s) return false;
  if (space.ctail > 0)
    return s->period_len() == 1 && s->prefix_len() <= space.ctail - 1;
  return ep_member(*s, space.tag);
}

NormValue norm(const SpaceDesc& space, const Element& x) {
  if (space.kind == SpaceDesc::Kind::FinDim) {
    const RatVec& v = std::get<RatVec>(x);
    if (v.size() != space.dim) throw DimensionMismatch("element has wrong dimension");
    Rat acc = 0;
    switch (space.fin_norm) {
      case FinNorm::Linf:
        for (Index i = 0; i < v.size(); ++i) acc = std::max(acc, Rat(abs(v(i))));
        return NormValue::exact(std::move(acc));
      case FinNorm::L1:
        for (Index i = 0; i < v.size(); ++i) acc += abs(v(i));
        return NormValue::exact(std::move(acc));
      case FinNorm::L2:
        for (Index i = 0; i < v.size(); ++i) acc += v(i) * v(i);
        return NormValue::exact_sqrt(std::move(acc));
    }
  }
  const EPSeq& s = std::get<EPSeq>(x);
  if (space.ctail > 0) return ep_norm(s, SpaceTag{SpaceTag::c, 0});
  return ep_norm(s, space.tag);
}

Element zero_element(const SpaceDesc& space) {
  if (space.kind == SpaceDesc::Kind::FinDim) return RatVec(RatVec::Zero(space.dim));
  return EPSeq::zero();
}

bool element_eq(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  if (const auto* v = std::get_if<RatVec>(&a)) return exactly_equal(*v, std::get<RatVec>(b));
  return std::get<EPSeq>(a) == std::get<EPSeq>(b);
}

bool element_leq(const Element& a, const Element& b) {
  if (const auto* v = std::get_if<RatVec>(&a)) return leq(*v, std::get<RatVec>(b));
  return ep_leq(std::get<EPSeq>(a), std::get<EPSeq>(b));
}

Element element_sup(const Element& a, const Element& b) {
  if (const auto* v = std::get_if<RatVec>(&a)) return RatVec(sup(*v, std::get<RatVec>(b)));
  return ep_sup(std::get<EPSeq>(a), std::get<EPSeq>(b));
}

Element element_inf(const Element& a, const Element& b) {
  if (const auto* v = std::get_if<RatVec>(&a)) return RatVec(inf(*v, std::get<RatVec>(b)));
  return ep_inf(std::get<EPSeq>(a), std::get<EPSeq>(b));
}

Element element_abs(const Element& a) {
  if (const auto* v = std::get_if<RatVec>(&a)) return RatVec(abs(*v));
  return ep_abs(std::get<EPSeq>(a));
}

Element element_sub(const Element& a, const Element& b) {
  if (const auto* v = std::get_if<RatVec>(&a)) return RatVec(*v - std::get<RatVec>(b));
  return ep_sub(std::get<EPSeq>(a), std::get<EPSeq>(b));
}

bool element_is_nonneg(const Element& a) {
  if (const auto* v = std::get_if<RatVec>(&a)) return is_nonnegative(*v);
  return std::get<EPSeq>(a).is_nonneg();
}

std::string element_to_string(const Element& a) {
  if (const auto* v = std::get_if<RatVec>(&a)) return vec_to_string(*v);
  return std::get<EPSeq>(a).to_string();
}

}  // namespace latlim
