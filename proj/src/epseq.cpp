#include "latlim/epseq.hpp"

#include <numeric>

namespace latlim {

namespace {

// Smallest d dividing the word length such that the word is a repetition of
// its first d letters.
std::size_t primitive_length(const std::vector<Rat>& word) {
  const std::size_t n = word.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t k = d; k < n && ok; ++k) ok = word[k] == word[k % d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

EPSeq::EPSeq(std::vector<Rat> prefix, std::vector<Rat> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw EmptyPeriod("EPSeq needs a nonempty period");
  period_.resize(primitive_length(period_));
  // Absorb prefix entries that already match the periodic tail: dropping the
  // last prefix entry x is sound iff x equals the period's last letter, after
  // which the period rotates right so the word still starts at the new
  // position.
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    prefix_.pop_back();
    period_.insert(period_.begin(), period_.back());
    period_.pop_back();
  }
}

bool EPSeq::is_zero() const {
  if (!prefix_.empty()) return false;  // canonical zero has empty prefix
  return period_.size() == 1 && period_[0] == 0;
}

bool EPSeq::is_nonneg() const {
  for (const Rat& q : prefix_)
    if (q < 0) return false;
  for (const Rat& q : period_)
    if (q < 0) return false;
  return true;
}

Index EPSeq::last_nonzero() const {
  for (Index k = prefix_len() - 1; k >= 0; --k)
    if (prefix_[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

RatVec EPSeq::truncate(Index n) const {
  RatVec v(n);
  for (Index k = 0; k < n; ++k) v(k) = term(k);
  return v;
}

EPSeq EPSeq::from_vector(const RatVec& v) {
  std::vector<Rat> prefix(static_cast<std::size_t>(v.size()));
  for (Index k = 0; k < v.size(); ++k) prefix[static_cast<std::size_t>(k)] = v(k);
  return EPSeq(std::move(prefix), {Rat(0)});
}

EPSeq EPSeq::constant(const Rat& value) { return EPSeq({}, {value}); }

EPSeq EPSeq::unit(Index k) {
  std::vector<Rat> prefix(static_cast<std::size_t>(k) + 1, Rat(0));
  prefix.back() = 1;
  return EPSeq(std::move(prefix), {Rat(0)});
}

std::string EPSeq::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < prefix_.size(); ++k) {
    if (k) out += ", ";
    out += rat_to_string(prefix_[k]);
  }
  if (!prefix_.empty()) out += " | ";
  for (std::size_t k = 0; k < period_.size(); ++k) {
    if (k) out += ", ";
    out += rat_to_string(period_[k]);
  }
  out += "...)";
  return out;
}

namespace {

template <typename F>
EPSeq pointwise(const EPSeq& s, const EPSeq& t, F&& f) {
  const Index p = std::max(s.prefix_len(), t.prefix_len());
  const Index d = std::lcm(s.period_len(), t.period_len());
  std::vector<Rat> prefix(static_cast<std::size_t>(p));
  for (Index k = 0; k < p; ++k) prefix[static_cast<std::size_t>(k)] = f(s.term(k), t.term(k));
  std::vector<Rat> period(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) period[static_cast<std::size_t>(k)] = f(s.term(p + k), t.term(p + k));
  return EPSeq(std::move(prefix), std::move(period));
}

}  // namespace

EPSeq ep_add(const EPSeq& s, const EPSeq& t) {
  return pointwise(s, t, [](const Rat& a, const Rat& b) { return a + b; });
}

EPSeq ep_sub(const EPSeq& s, const EPSeq& t) {
  return pointwise(s, t, [](const Rat& a, const Rat& b) { return a - b; });
}

EPSeq ep_mul(const EPSeq& s, const EPSeq& t) {
  return pointwise(s, t, [](const Rat& a, const Rat& b) { return a * b; });
}

EPSeq ep_scale(const Rat& a, const EPSeq& s) {
  return pointwise(s, s, [&a](const Rat& x, const Rat&) { return a * x; });
}

EPSeq ep_sup(const EPSeq& s, const EPSeq& t) {
  return pointwise(s, t, [](const Rat& a, const Rat& b) { return a > b ? a : b; });
}

EPSeq ep_inf(const EPSeq& s, const EPSeq& t) {
  return pointwise(s, t, [](const Rat& a, const Rat& b) { return a < b ? a : b; });
}

EPSeq ep_abs(const EPSeq& s) {
  return pointwise(s, s, [](const Rat& a, const Rat&) { return abs(a); });
}

bool ep_leq(const EPSeq& s, const EPSeq& t) {
  const Index n = std::max(s.prefix_len(), t.prefix_len()) +
                  std::lcm(s.period_len(), t.period_len());
  for (Index k = 0; k < n; ++k)
    if (s.term(k) > t.term(k)) return false;
  return true;
}

SpaceTag SpaceTag::make_lp(int p) {
  SpaceTag t;
  t.kind = lp;
  t.p = p;
  return t;
}

std::string SpaceTag::name() const {
  switch (kind) {
    case c00: return "c00";
    case c: return "c";
    case c0_closure_model: return "c0-model";
    case linf: return "linf";
    case lp: return "l" + std::to_string(p);
  }
  return "?";
}

bool NormValue::at_least(const Rat& threshold) const {
  if (kind == Infinite) return true;
  if (kind == ExactSqrt) {
    if (threshold <= 0) return true;
    return value >= threshold * threshold;
  }
  return value >= threshold;
}

bool NormValue::less_than(const Rat& threshold) const { return !at_least(threshold); }

std::string NormValue::to_string() const {
  switch (kind) {
    case Exact: return rat_to_string(value);
    case ExactSqrt: return "sqrt(" + rat_to_string(value) + ")";
    case Infinite: return "inf";
  }
  return "?";
}

bool ep_member(const EPSeq& s, const SpaceTag& tag) {
  const bool zero_period = s.period_len() == 1 && s.period()[0] == 0;
  switch (tag.kind) {
    case SpaceTag::c00: return zero_period;
    case SpaceTag::c: return s.period_len() == 1;
    case SpaceTag::c0_closure_model: return zero_period;
    case SpaceTag::linf: return true;
    case SpaceTag::lp: return zero_period;
  }
  return false;
}

NormValue ep_norm(const EPSeq& s, const SpaceTag& tag) {
  const bool zero_period = s.period_len() == 1 && s.period()[0] == 0;
  const bool sup_norm = tag.kind == SpaceTag::c00 || tag.kind == SpaceTag::c ||
                        tag.kind == SpaceTag::c0_closure_model || tag.kind == SpaceTag::linf;
  if (sup_norm) {
    Rat m = 0;
    for (const Rat& q : s.prefix()) m = std::max(m, Rat(abs(q)));
    for (const Rat& q : s.period()) m = std::max(m, Rat(abs(q)));
    return NormValue::exact(std::move(m));
  }
  if (tag.p != 1 && tag.p != 2)
    throw NormNotExact("exact norms are available for p in {1,2} and the sup norm");
  if (!zero_period) return NormValue::infinite();
  Rat acc = 0;
  for (const Rat& q : s.prefix()) acc += tag.p == 1 ? Rat(abs(q)) : Rat(q * q);
  return tag.p == 1 ? NormValue::exact(std::move(acc)) : NormValue::exact_sqrt(std::move(acc));
}

}  // namespace latlim
