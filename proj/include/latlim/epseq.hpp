#pragma once

#include <string>
#include <vector>

#include "latlim/errors.hpp"
#include "latlim/types.hpp"

namespace latlim {

/// Eventually periodic rational sequence: a finite prefix followed by an
/// infinitely repeated period word. Canonical form is maintained as a class
/// invariant: the period is primitive and the prefix is as short as possible
/// (so equality of sequences is equality of representations).
///
/// Positions are 0-based internally; the i/j parameters of the averaging maps
/// are 1-based as in the usual sequence-space notation.
class EPSeq {
 public:
  EPSeq() : period_{Rat(0)} {}  // zero sequence
  EPSeq(std::vector<Rat> prefix, std::vector<Rat> period);

  const std::vector<Rat>& prefix() const { return prefix_; }
  const std::vector<Rat>& period() const { return period_; }
  Index prefix_len() const { return static_cast<Index>(prefix_.size()); }
  Index period_len() const { return static_cast<Index>(period_.size()); }

  /// Term at 0-based position k.
  const Rat& term(Index k) const {
    if (k < prefix_len()) return prefix_[static_cast<std::size_t>(k)];
    return period_[static_cast<std::size_t>((k - prefix_len()) % period_len())];
  }

  bool operator==(const EPSeq& o) const {
    return prefix_ == o.prefix_ && period_ == o.period_;
  }
  bool operator!=(const EPSeq& o) const { return !(*this == o); }

  bool is_zero() const;
  /// Pointwise s >= 0.
  bool is_nonneg() const;
  /// Largest 0-based position with a nonzero term, or -1; only meaningful when
  /// the period is zero.
  Index last_nonzero() const;

  RatVec truncate(Index n) const;
  static EPSeq from_vector(const RatVec& v);          // v then zeros
  static EPSeq constant(const Rat& value);            // value, value, ...
  static EPSeq unit(Index k);                         // e_{k+1}, 0-based k
  static EPSeq zero() { return EPSeq(); }

  std::string to_string() const;

 private:
  std::vector<Rat> prefix_;
  std::vector<Rat> period_;
};

EPSeq ep_add(const EPSeq& s, const EPSeq& t);
EPSeq ep_sub(const EPSeq& s, const EPSeq& t);
EPSeq ep_mul(const EPSeq& s, const EPSeq& t);  // pointwise product
EPSeq ep_scale(const Rat& a, const EPSeq& s);
EPSeq ep_sup(const EPSeq& s, const EPSeq& t);
EPSeq ep_inf(const EPSeq& s, const EPSeq& t);
EPSeq ep_abs(const EPSeq& s);
bool ep_leq(const EPSeq& s, const EPSeq& t);

/// Sequence-space membership and norms.
struct SpaceTag {
  enum Kind { c00, c, c0_closure_model, linf, lp } kind = linf;
  int p = 0;  // meaningful for lp only

  static SpaceTag make_lp(int p);
  std::string name() const;
  bool operator==(const SpaceTag& o) const { return kind == o.kind && p == o.p; }
};

struct NormValue {
  enum Kind { Exact, ExactSqrt, Infinite } kind = Exact;
  Rat value;  // the norm itself (Exact) or its square (ExactSqrt)

  static NormValue exact(Rat v) { return {Exact, std::move(v)}; }
  static NormValue exact_sqrt(Rat squared) { return {ExactSqrt, std::move(squared)}; }
  static NormValue infinite() { return {Infinite, Rat(0)}; }

  bool is_finite() const { return kind != Infinite; }
  bool operator==(const NormValue& o) const { return kind == o.kind && value == o.value; }
  /// Exact comparison against a rational threshold (squares compared for
  /// ExactSqrt; Infinite exceeds everything).
  bool at_least(const Rat& threshold) const;
  bool less_than(const Rat& threshold) const;
  std::string to_string() const;
};

bool ep_member(const EPSeq& s, const SpaceTag& tag);

/// Exact norm per tag. c00, c, c0_closure_model and linf carry the sup norm;
/// lp(1) and lp(2) are finite only for sequences with zero period. Tags lp(p)
/// for p outside {1,2} raise NormNotExact.
NormValue ep_norm(const EPSeq& s, const SpaceTag& tag);

}  // namespace latlim
