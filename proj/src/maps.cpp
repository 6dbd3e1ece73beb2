#include "latlim/maps.hpp"

#include <algorithm>

#include "latlim/boxes.hpp"
#include "latlim/errors.hpp"
#include "latlim/lattice.hpp"
#include "latlim/rng.hpp"

namespace latlim {

std::string method_name(Method m) {
  switch (m) {
    case Method::Structural: return "structural";
    case Method::LpExact: return "lp_exact";
    case Method::Sampled: return "sampled";
  }
  return "?";
}

std::string property_name(MapProperty p) {
  switch (p) {
    case MapProperty::Linear: return "linear";
    case MapProperty::Hom: return "lattice-hom";
    case MapProperty::IP: return "interval-preserving";
    case MapProperty::AIP: return "almost-interval-preserving";
  }
  return "?";
}

LatticeMap LatticeMap::from_matrix(RatMat m, FinNorm n) {
  LatticeMap t;
  t.kind = Kind::Matrix;
  t.domain = SpaceDesc::findim(m.cols(), n);
  t.codomain = SpaceDesc::findim(m.rows(), n);
  t.matrix = std::move(m);
  return t;
}

LatticeMap LatticeMap::averaging(Index i, Index j, SpaceTag tag) {
  if (i < 1 || j < i) throw BadIndices("averaging map needs 1 <= i <= j");
  LatticeMap t;
  t.kind = Kind::Sequence;
  t.pipeline = {SeqTransform::averaging(i, j)};
  t.domain = SpaceDesc::seq(tag);
  t.codomain = SpaceDesc::seq(tag);
  return t;
}

LatticeMap LatticeMap::averaging_leg(Index i, SpaceTag tag) {
  LatticeMap t;
  t.kind = Kind::Sequence;
  t.pipeline = {SeqTransform::xprime_avg(i)};
  t.domain = SpaceDesc::seq(tag);
  t.codomain = SpaceDesc::seq(tag);
  return t;
}

LatticeMap LatticeMap::inclusion(SpaceDesc dom, SpaceDesc cod) {
  LatticeMap t;
  t.kind = Kind::Sequence;
  t.pipeline = {SeqTransform::identity()};
  t.domain = std::move(dom);
  t.codomain = std::move(cod);
  return t;
}

LatticeMap LatticeMap::identity_on(SpaceDesc sp) { return inclusion(sp, sp); }

LatticeMap LatticeMap::zero_between(SpaceDesc dom, SpaceDesc cod) {
  LatticeMap t;
  if (dom.kind == SpaceDesc::Kind::FinDim && cod.kind == SpaceDesc::Kind::FinDim) {
    t.kind = Kind::Matrix;
    t.matrix = RatMat::Zero(cod.dim, dom.dim);
  } else {
    t.kind = Kind::Sequence;
    t.pipeline = {SeqTransform::zero()};
  }
  t.domain = std::move(dom);
  t.codomain = std::move(cod);
  return t;
}

LatticeMap LatticeMap::embedding(Index n, SpaceTag tag) {
  LatticeMap t;
  t.kind = Kind::Embed;
  t.domain = SpaceDesc::findim(n);
  t.codomain = SpaceDesc::seq(tag);
  return t;
}

Element LatticeMap::apply(const Element& x) const {
  switch (kind) {
    case Kind::Matrix: {
      const RatVec& v = std::get<RatVec>(x);
      if (v.size() != matrix.cols()) throw DimensionMismatch("matrix map: wrong input size");
      return RatVec(matrix * v);
    }
    case Kind::Sequence: return apply_pipeline(pipeline, std::get<EPSeq>(x));
    case Kind::Embed: {
      const RatVec& v = std::get<RatVec>(x);
      if (v.size() != domain.dim) throw DimensionMismatch("embedding: wrong input size");
      return apply_pipeline(pipeline, EPSeq::from_vector(v));
    }
  }
  throw InternalError("unknown map kind");
}

EPSeq LatticeMap::apply_seq(const EPSeq& s) const {
  if (kind != Kind::Sequence) throw NotMatrixKind("sequence application on non-sequence map");
  return apply_pipeline(pipeline, s);
}

Index LatticeMap::truncation_cols(Index rows) const {
  switch (kind) {
    case Kind::Matrix: return matrix.cols();
    case Kind::Sequence: return window_cols(pipeline, rows);
    case Kind::Embed: return domain.dim;
  }
  throw InternalError("unknown map kind");
}

RatMat LatticeMap::truncation(Index rows) const {
  switch (kind) {
    case Kind::Matrix: return matrix;
    case Kind::Sequence: return window_matrix(pipeline, rows, truncation_cols(rows));
    case Kind::Embed: {
      const Index w = window_cols(pipeline, rows);
      RatMat full = window_matrix(pipeline, rows, std::max(w, domain.dim));
      return full.block(0, 0, rows, domain.dim);
    }
  }
  throw InternalError("unknown map kind");
}

std::string LatticeMap::describe() const {
  switch (kind) {
    case Kind::Matrix:
      return "matrix " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols());
    case Kind::Sequence: {
      std::string n;
      for (const auto& t : pipeline) {
        if (!n.empty()) n += " o ";
        n = t.name() + (n.empty() ? "" : " o " + n);
      }
      if (pipeline.size() == 1 && pipeline[0].kind == SeqTransform::Kind::Identity &&
          !(domain == codomain))
        n = "inclusion";
      return n + " : " + domain.name() + " -> " + codomain.name();
    }
    case Kind::Embed: return "embed : " + domain.name() + " -> " + codomain.name();
  }
  return "?";
}

LatticeMap compose(const LatticeMap& s, const LatticeMap& t) {
  using K = LatticeMap::Kind;
  if (s.kind == K::Matrix && t.kind == K::Matrix) {
    if (s.matrix.cols() != t.matrix.rows())
      throw DimensionMismatch("composition: inner dimensions differ");
    LatticeMap out = LatticeMap::from_matrix(RatMat(s.matrix * t.matrix));
    out.domain = t.domain;
    out.codomain = s.codomain;
    return out;
  }
  if (s.kind == K::Sequence && (t.kind == K::Sequence || t.kind == K::Embed)) {
    LatticeMap out = t;
    out.pipeline.insert(out.pipeline.end(), s.pipeline.begin(), s.pipeline.end());
    out.codomain = s.codomain;
    return out;
  }
  throw DimensionMismatch("composition: incompatible map kinds");
}

LatticeMap adjoint(const LatticeMap& t) {
  if (t.kind != LatticeMap::Kind::Matrix)
    throw NotMatrixKind("adjoint is defined for matrix maps");
  LatticeMap out;
  out.kind = LatticeMap::Kind::Matrix;
  out.matrix = t.matrix.transpose();
  // Finite-dimensional duals are identified with the spaces themselves; the
  // norm dualizes (sup <-> l1, l2 self-dual).
  auto dual_norm = [](FinNorm n) {
    switch (n) {
      case FinNorm::Linf: return FinNorm::L1;
      case FinNorm::L1: return FinNorm::Linf;
      case FinNorm::L2: return FinNorm::L2;
    }
    return FinNorm::Linf;
  };
  out.domain = SpaceDesc::findim(t.codomain.dim, dual_norm(t.codomain.fin_norm));
  out.codomain = SpaceDesc::findim(t.domain.dim, dual_norm(t.domain.fin_norm));
  return out;
}

std::optional<bool> maps_equal(const LatticeMap& a, const LatticeMap& b) {
  using K = LatticeMap::Kind;
  if (a.kind != b.kind) return std::nullopt;
  if (a.kind == K::Matrix) return exactly_equal(a.matrix, b.matrix);
  if (a.kind == K::Sequence) return pipelines_equal(a.pipeline, b.pipeline);
  // Embeddings kill all input coordinates past the domain dimension, so both
  // maps vanish on late rows and a wide enough truncation decides equality.
  if (a.domain.dim != b.domain.dim) return false;
  const auto ta = tail_behavior(a.pipeline);
  const auto tb = tail_behavior(b.pipeline);
  if (!ta || !tb) return std::nullopt;
  auto settle = [&](const TailBehavior& tl) {
    Index r = tl.from_row;
    if (tl.kind == TailBehavior::Kind::Shift) r = std::max(r, a.domain.dim - tl.shift);
    if (tl.kind == TailBehavior::Kind::PairAvg)
      r = std::max(r, (a.domain.dim + tl.anchor + 1) / 2);
    return r + 2;
  };
  const Index rows = std::max(settle(*ta), settle(*tb));
  return exactly_equal(a.truncation(rows), b.truncation(rows));
}

namespace {

bool structurally_nonnegative(const std::vector<SeqTransform>&) {
  // Every named transformer has nonnegative coefficients.
  return true;
}

/// Random member of a model space (nonnegative when asked).
EPSeq sample_seq(Rng& rng, const SpaceDesc& sp, bool nonneg) {
  auto entry = [&]() { return nonneg ? rng.nonneg_rat() : rng.rat_in(); };
  if (sp.ctail > 0) {
    std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, sp.ctail - 1)));
    for (auto& q : prefix) q = entry();
    return EPSeq(std::move(prefix), {entry()});
  }
  std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, 5)));
  for (auto& q : prefix) q = entry();
  switch (sp.tag.kind) {
    case SpaceTag::c00:
    case SpaceTag::c0_closure_model:
    case SpaceTag::lp: return EPSeq(std::move(prefix), {Rat(0)});
    case SpaceTag::c: return EPSeq(std::move(prefix), {entry()});
    case SpaceTag::linf: {
      std::vector<Rat> period(static_cast<std::size_t>(rng.int_in(1, 3)));
      for (auto& q : period) q = entry();
      return EPSeq(std::move(prefix), std::move(period));
    }
  }
  return EPSeq::zero();
}

/// Random pointwise factor with entries in [0,1], in the same membership
/// class as the codomain so that factor (.) Tx stays representable there.
EPSeq sample_unit_factor(Rng& rng, const SpaceDesc& sp) {
  auto frac = [&]() {
    const long d = rng.int_in(1, 4);
    return rat(rng.int_in(0, d), d);
  };
  std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, 4)));
  for (auto& q : prefix) q = frac();
  if (sp.kind == SpaceDesc::Kind::Seq && sp.tag.kind == SpaceTag::linf) {
    std::vector<Rat> period(static_cast<std::size_t>(rng.int_in(1, 2)));
    for (auto& q : period) q = frac();
    return EPSeq(std::move(prefix), std::move(period));
  }
  return EPSeq(std::move(prefix), {frac()});
}

Witness element_witness(std::string kind, std::string text,
                        std::initializer_list<std::pair<std::string, Element>> elems) {
  Witness w;
  w.kind = std::move(kind);
  w.text = std::move(text);
  for (auto& e : elems) w.elements.push_back(e);
  return w;
}

/// Window system for "z in [0,x] within the domain model": the constant-tail
/// pattern of a c_i domain is substituted away, so the remaining variables
/// carry plain box bounds.
struct WindowSystem {
  RatMat map;           // window outputs as a function of the reduced z-variables
  RatVec upper_bounds;  // reduced variables range over [0, upper_bounds]
};

WindowSystem build_window_system(const LatticeMap& t, const EPSeq& x, Index rows) {
  const Index w = t.truncation_cols(rows);
  RatMat a = t.truncation(rows);
  WindowSystem sys;
  if (t.domain.ctail > 0) {
    const Index i0 = t.domain.ctail - 1;  // constant from this 0-based position
    const Index vars = i0 + 1;
    sys.map = RatMat::Zero(rows, vars);
    for (Index c = 0; c < std::min(i0, w); ++c) sys.map.col(c) = a.col(c);
    for (Index c = i0; c < w; ++c) sys.map.col(i0) += a.col(c);
    sys.upper_bounds = RatVec(vars);
    for (Index c = 0; c < i0; ++c) sys.upper_bounds(c) = x.term(c);
    sys.upper_bounds(i0) = x.term(i0);  // x is constant from i0 as well
  } else {
    sys.map = std::move(a);
    sys.upper_bounds = RatVec(w);
    for (Index c = 0; c < w; ++c) sys.upper_bounds(c) = x.term(c);
  }
  return sys;
}

}  // namespace

Verdict is_positive(const LatticeMap& t, const CheckConfig&) {
  if (t.kind == LatticeMap::Kind::Matrix) {
    for (Index r = 0; r < t.matrix.rows(); ++r)
      for (Index c = 0; c < t.matrix.cols(); ++c)
        if (t.matrix(r, c) < 0) {
          RatVec e = RatVec::Zero(t.matrix.cols());
          e(c) = 1;
          Witness w = element_witness(
              "negative-entry",
              "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                  ") is negative; the basis vector maps outside the cone",
              {{"x", Element(e)}, {"Tx", Element(RatVec(t.matrix * e))}});
          w.values.emplace_back("entry", t.matrix(r, c));
          return Verdict::no(Method::Structural, std::move(w));
        }
    return Verdict::yes(Method::Structural);
  }
  if (!structurally_nonnegative(t.pipeline))
    throw InternalError("unreachable: unnamed transformer");
  Verdict v = Verdict::yes(Method::Structural);
  v.notes.push_back("transformer coefficients are nonnegative");
  return v;
}

namespace {

Verdict hom_matrix_structural(const RatMat& m) {
  // A positive matrix is a lattice homomorphism iff every row has at most one
  // nonzero entry; violations give exact |Tx| != T|x| witnesses.
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (m(r, c) < 0) {
        RatVec e = RatVec::Zero(m.cols());
        e(c) = 1;
        return Verdict::no(
            Method::Structural,
            element_witness("abs-mismatch", "positive part is not preserved",
                            {{"x", Element(e)},
                             {"abs(Tx)", Element(RatVec(abs(m * e)))},
                             {"T(abs(x))", Element(RatVec(m * e))}}));
      }
  for (Index r = 0; r < m.rows(); ++r) {
    Index first = -1;
    for (Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (first < 0) {
        first = c;
        continue;
      }
      RatVec x = RatVec::Zero(m.cols());
      x(first) = 1;
      x(c) = -1;
      return Verdict::no(
          Method::Structural,
          element_witness("abs-mismatch",
                          "row " + std::to_string(r + 1) + " mixes coordinates " +
                              std::to_string(first + 1) + " and " + std::to_string(c + 1),
                          {{"x", Element(x)},
                           {"abs(Tx)", Element(RatVec(abs(m * x)))},
                           {"T(abs(x))", Element(RatVec(m * abs(x)))}}));
    }
  }
  return Verdict::yes(Method::Structural);
}

/// Battery of sequence inputs that expose homomorphism failures of the named
/// transformers (the pair differences hit every averaged block).
std::vector<EPSeq> hom_battery(const SpaceDesc& domain, Index horizon) {
  std::vector<EPSeq> xs;
  const Index reach = domain.ctail > 0 ? std::min<Index>(domain.ctail, horizon) : horizon;
  for (Index k = 0; k + 1 < reach + 2; ++k) {
    std::vector<Rat> prefix(static_cast<std::size_t>(k + 2), Rat(0));
    prefix[static_cast<std::size_t>(k)] = 1;
    prefix[static_cast<std::size_t>(k + 1)] = -1;
    EPSeq cand(std::move(prefix), {Rat(0)});
    if (member(domain, Element(cand))) xs.push_back(std::move(cand));
  }
  EPSeq alternating({}, {Rat(1), Rat(-1)});
  if (member(domain, Element(alternating))) xs.push_back(std::move(alternating));
  return xs;
}

EPSeq shrink_hom_witness(const LatticeMap& t, EPSeq x) {
  auto violates = [&](const EPSeq& cand) {
    return t.apply_seq(ep_abs(cand)) != ep_abs(t.apply_seq(cand));
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (Index k = 0; k < x.prefix_len(); ++k) {
      if (x.prefix()[static_cast<std::size_t>(k)] == 0) continue;
      std::vector<Rat> prefix = x.prefix();
      prefix[static_cast<std::size_t>(k)] = 0;
      EPSeq cand(std::move(prefix), x.period());
      if (violates(cand)) {
        x = std::move(cand);
        improved = true;
      }
    }
  }
  return x;
}

}  // namespace

Verdict is_lattice_hom(const LatticeMap& t, const CheckConfig& cfg) {
  if (t.kind == LatticeMap::Kind::Matrix) return hom_matrix_structural(t.matrix);
  if (t.kind == LatticeMap::Kind::Embed) {
    Verdict v = Verdict::yes(Method::Structural);
    v.notes.push_back("coordinate embedding preserves lattice operations");
    return v;
  }
  bool only_rigid = true;
  for (const auto& s : t.pipeline)
    only_rigid = only_rigid && (s.kind == SeqTransform::Kind::Identity ||
                                s.kind == SeqTransform::Kind::Zero);
  if (only_rigid) return Verdict::yes(Method::Structural);

  // Definitional oracle |Tx| = T|x| on a battery plus seeded samples.
  for (const EPSeq& x : hom_battery(t.domain, cfg.horizon)) {
    if (t.apply_seq(ep_abs(x)) != ep_abs(t.apply_seq(x))) {
      const EPSeq small = shrink_hom_witness(t, x);
      return Verdict::no(Method::LpExact,
                         element_witness("abs-mismatch", "|Tx| differs from T|x|",
                                         {{"x", Element(small)},
                                          {"abs(Tx)", Element(ep_abs(t.apply_seq(small)))},
                                          {"T(abs(x))", Element(t.apply_seq(ep_abs(small)))}}));
    }
  }
  Rng rng(cfg.seed);
  for (int n = 0; n < cfg.samples; ++n) {
    const EPSeq x = sample_seq(rng, t.domain, false);
    const EPSeq y = sample_seq(rng, t.domain, false);
    const EPSeq lhs = t.apply_seq(ep_sup(x, y));
    const EPSeq rhs = ep_sup(t.apply_seq(x), t.apply_seq(y));
    if (lhs != rhs)
      return Verdict::no(Method::Sampled,
                         element_witness("sup-mismatch", "T(x v y) differs from Tx v Ty",
                                         {{"x", Element(x)},
                                          {"y", Element(y)},
                                          {"T(x v y)", Element(lhs)},
                                          {"Tx v Ty", Element(rhs)}}));
  }
  Verdict v = Verdict::yes_sampled(cfg.seed, cfg.samples);
  v.notes.push_back("definitional oracle on the representable class only");
  return v;
}

namespace {

Verdict ip_matrix(const RatMat& m, std::uint64_t cap) {
  // Riesz reduction: positivity makes [0,x] the sum of the scaled basis
  // intervals, so interval preservation holds iff every vertex of every
  // [0, T e_j] is attained from [0, e_j].
  for (Index j = 0; j < m.cols(); ++j) {
    const RatVec column = m.col(j);
    RatVec lo = RatVec::Zero(m.cols());
    RatVec hi = RatVec::Zero(m.cols());
    hi(j) = 1;
    for (const RatVec& v : box_vertices(column, cap)) {
      const auto r = lp_feasible(FeasibilityProblem::boxed(m, v, lo, hi));
      if (!r.feasible) {
        RatVec e = RatVec::Zero(m.cols());
        e(j) = 1;
        Witness w = element_witness(
            "box-vertex-escape",
            "vertex of [0, T e_" + std::to_string(j + 1) + "] has no preimage in [0, e_" +
                std::to_string(j + 1) + "]",
            {{"basis", Element(e)}, {"vertex", Element(v)}});
        return Verdict::no(Method::LpExact, std::move(w));
      }
    }
  }
  return Verdict::yes(Method::LpExact);
}

struct SeqIpSample {
  EPSeq x;
  EPSeq y;
};

std::vector<SeqIpSample> ip_battery(const LatticeMap& t) {
  std::vector<SeqIpSample> out;
  std::vector<EPSeq> xs;
  {
    EPSeq ones = EPSeq::constant(1);
    if (member(t.domain, Element(ones))) xs.push_back(std::move(ones));
    EPSeq block({Rat(1), Rat(1), Rat(1)}, {Rat(0)});
    if (member(t.domain, Element(block))) xs.push_back(std::move(block));
    EPSeq spike({Rat(2), Rat(0), Rat(1)}, {Rat(0)});
    if (member(t.domain, Element(spike))) xs.push_back(std::move(spike));
  }
  for (const EPSeq& x : xs) {
    const EPSeq tx = t.apply_seq(x);
    out.push_back({x, tx});
    out.push_back({x, ep_scale(rat(1, 2), tx)});
    // Halve one coordinate of Tx; the c_i inclusions fail exactly here.
    for (Index pos : {t.domain.ctail > 0 ? t.domain.ctail : Index{1}, Index{2}}) {
      if (tx.term(pos - 1) == 0) continue;
      std::vector<Rat> prefix;
      for (Index k = 0; k < pos; ++k) prefix.push_back(tx.term(k));
      prefix[static_cast<std::size_t>(pos - 1)] /= 2;
      std::vector<Rat> rest;
      for (Index k = pos; k < pos + tx.period_len(); ++k) rest.push_back(tx.term(k));
      EPSeq y(std::move(prefix), std::move(rest));
      out.push_back({x, std::move(y)});
    }
    // Keep a single coordinate.
    if (tx.term(0) != 0) {
      EPSeq y({tx.term(0)}, {Rat(0)});
      if (member(t.codomain, Element(y))) out.push_back({x, std::move(y)});
    }
  }
  return out;
}

Verdict ip_sequence(const LatticeMap& t, const CheckConfig& cfg) {
  auto check_sample = [&](const EPSeq& x, const EPSeq& y) -> std::optional<Verdict> {
    if (!x.is_nonneg() || !member(t.domain, Element(x))) return std::nullopt;
    const EPSeq tx = t.apply_seq(x);
    if (!y.is_nonneg() || !ep_leq(y, tx) || !member(t.codomain, Element(y)))
      return std::nullopt;
    const Index rows =
        std::max({cfg.horizon, y.prefix_len() + y.period_len(),
                  tx.prefix_len() + tx.period_len(), t.domain.ctail + 2});
    const WindowSystem sys = build_window_system(t, x, rows);
    const auto r = lp_feasible(FeasibilityProblem::boxed(
        sys.map, y.truncate(rows), RatVec::Zero(sys.upper_bounds.size()), sys.upper_bounds));
    if (!r.feasible) {
      Witness w = element_witness(
          "box-point-escape",
          "y in [0, Tx] has no preimage in [0, x] on the first " + std::to_string(rows) +
              " coordinates (exact window LP)",
          {{"x", Element(x)}, {"y", Element(y)}});
      Verdict v = Verdict::no(Method::LpExact, std::move(w));
      v.notes.push_back("window infeasibility refutes the full inclusion");
      return v;
    }
    return std::nullopt;
  };

  for (const auto& s : ip_battery(t)) {
    if (auto v = check_sample(s.x, s.y)) return *v;
  }
  Rng rng(cfg.seed);
  for (int n = 0; n < cfg.samples; ++n) {
    const EPSeq x = sample_seq(rng, t.domain, true);
    const EPSeq tx = t.apply_seq(x);
    const EPSeq y = ep_mul(sample_unit_factor(rng, t.codomain), tx);
    if (auto v = check_sample(x, y)) return *v;
  }
  Verdict v = Verdict::yes_sampled(cfg.seed, cfg.samples);
  v.notes.push_back("interval inclusion verified on sampled (x, y) pairs only");
  return v;
}

}  // namespace

Verdict is_interval_preserving(const LatticeMap& t, const CheckConfig& cfg) {
  Verdict pos = is_positive(t, cfg);
  if (!pos.holds) {
    pos.notes.push_back("not positive, hence not interval preserving");
    return pos;
  }
  switch (t.kind) {
    case LatticeMap::Kind::Matrix: return ip_matrix(t.matrix, cfg.vertex_cap);
    case LatticeMap::Kind::Embed: {
      Verdict v = Verdict::yes(Method::Structural);
      v.notes.push_back("coordinate embedding maps [0,x] onto [0, embedded x]");
      return v;
    }
    case LatticeMap::Kind::Sequence: return ip_sequence(t, cfg);
  }
  throw InternalError("unknown map kind");
}

Rat window_distance(const LatticeMap& t, const EPSeq& x, const EPSeq& y, Index window) {
  if (t.kind != LatticeMap::Kind::Sequence)
    throw NotMatrixKind("window distance is for sequence maps");
  const WindowSystem sys = build_window_system(t, x, window);
  std::vector<AffineTerm> terms;
  for (Index r = 0; r < window; ++r)
    terms.push_back({RatVec(sys.map.row(r).transpose()), -y.term(r)});
  std::vector<std::optional<Rat>> lo(sys.upper_bounds.size(), Rat(0));
  std::vector<std::optional<Rat>> hi(sys.upper_bounds.size());
  for (Index c = 0; c < sys.upper_bounds.size(); ++c) hi[c] = sys.upper_bounds(c);
  return minimize_linear_over_max(terms, lo, hi);
}

bool verify_separation(const LatticeMap& t, const SeparationCertificate& cert) {
  if (t.kind != LatticeMap::Kind::Sequence) return false;
  if (cert.bound <= 0 || cert.window < 1) return false;
  if (!cert.x.is_nonneg() || !member(t.domain, Element(cert.x))) return false;
  const EPSeq tx = t.apply_seq(cert.x);
  if (!cert.y.is_nonneg() || !ep_leq(cert.y, tx)) return false;
  if (!member(t.codomain, Element(cert.y))) return false;
  return window_distance(t, cert.x, cert.y, cert.window) >= cert.bound;
}

Verdict is_almost_interval_preserving(const LatticeMap& t, const CheckConfig& cfg) {
  Verdict pos = is_positive(t, cfg);
  if (!pos.holds) {
    pos.notes.push_back("not positive, hence not almost interval preserving");
    return pos;
  }
  if (t.kind == LatticeMap::Kind::Matrix || t.kind == LatticeMap::Kind::Embed) {
    Verdict v = is_interval_preserving(t, cfg);
    v.notes.push_back("AIP<=>IP: finite-dimensional order intervals are compact");
    return v;
  }

  // Sampled closure check: the sup-distance from y to T([0,x]) restricted to a
  // coordinate window is a lower bound for the true distance (the window reads
  // only windowed inputs), so a positive exact LP value separates y from the
  // closure and yields a certificate.
  auto check_sample = [&](const EPSeq& x, const EPSeq& y) -> std::optional<Verdict> {
    if (!x.is_nonneg() || !member(t.domain, Element(x))) return std::nullopt;
    const EPSeq tx = t.apply_seq(x);
    if (!y.is_nonneg() || !ep_leq(y, tx) || !member(t.codomain, Element(y)))
      return std::nullopt;
    const Index rows =
        std::max({cfg.horizon, y.prefix_len() + y.period_len(),
                  tx.prefix_len() + tx.period_len(), t.domain.ctail + 2});
    const Rat dist = window_distance(t, x, y, rows);
    if (dist > 0) {
      SeparationCertificate cert{x, y, rows, dist,
                                 t.domain.ctail > 0
                                     ? "images are constant from position " +
                                           std::to_string(t.domain.ctail)
                                     : "window coordinates of the image"};
      Witness w = element_witness(
          "separation",
          "every point of T([0,x]) stays at sup-distance >= " + rat_to_string(dist) +
              " from y on the first " + std::to_string(rows) + " coordinates",
          {{"x", Element(x)}, {"y", Element(y)}});
      w.values.emplace_back("bound", dist);
      Verdict v = Verdict::no(Method::LpExact, std::move(w));
      v.notes.push_back("separation certificate: " + cert.family);
      return v;
    }
    return std::nullopt;
  };

  for (const auto& s : ip_battery(t)) {
    if (auto v = check_sample(s.x, s.y)) return *v;
  }
  Rng rng(cfg.seed);
  for (int n = 0; n < cfg.samples; ++n) {
    const EPSeq x = sample_seq(rng, t.domain, true);
    const EPSeq y = ep_mul(sample_unit_factor(rng, t.codomain), t.apply_seq(x));
    if (auto v = check_sample(x, y)) return *v;
  }
  Verdict v = Verdict::yes_sampled(cfg.seed, cfg.samples);
  v.notes.push_back("closure membership verified on the representable class only");
  return v;
}

Verdict ip_definitional_oracle(const RatMat& t, const RatVec& x, std::uint64_t cap) {
  if (x.size() != t.cols()) throw DimensionMismatch("oracle point of wrong dimension");
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) <= 0) throw PreconditionViolated("oracle needs a strictly positive x");
  if (!is_nonnegative(t)) {
    Verdict v;
    v.holds = false;
    v.method = Method::Structural;
    v.witness = Witness{"negative-entry", "not a positive matrix", {}, {}};
    return v;
  }
  const RatVec tx = t * x;
  const RatVec lo = RatVec::Zero(t.cols());
  for (const RatVec& v : box_vertices(tx, cap)) {
    const auto r = lp_feasible(FeasibilityProblem::boxed(t, v, lo, x));
    if (!r.feasible)
      return Verdict::no(Method::LpExact,
                         element_witness("box-vertex-escape",
                                         "vertex of [0,Tx] misses T[0,x]",
                                         {{"x", Element(x)}, {"vertex", Element(v)}}));
  }
  Verdict v = Verdict::yes(Method::LpExact);
  v.notes.push_back("definition checked at a strictly positive point");
  return v;
}

Verdict hom_definitional_oracle(const RatMat& t, const CheckConfig& cfg) {
  Rng rng(cfg.seed);
  for (int n = 0; n < cfg.samples; ++n) {
    const RatVec x = rng.vec(t.cols());
    const RatVec y = rng.vec(t.cols());
    const RatVec lhs = t * sup(x, y);
    const RatVec rhs = sup(RatVec(t * x), RatVec(t * y));
    if (!exactly_equal(lhs, rhs))
      return Verdict::no(Method::Sampled,
                         element_witness("sup-mismatch", "T(x v y) != Tx v Ty",
                                         {{"x", Element(x)}, {"y", Element(y)}}));
  }
  return Verdict::yes_sampled(cfg.seed, cfg.samples);
}

DualityReport check_duality(const LatticeMap& t, const CheckConfig& cfg) {
  if (t.kind != LatticeMap::Kind::Matrix)
    throw NotMatrixKind("duality check is for matrix maps");
  if (!is_positive(t, cfg).holds)
    throw PreconditionViolated("duality check needs a positive map");
  DualityReport rep;
  const LatticeMap adj = adjoint(t);
  rep.hom = is_lattice_hom(t, cfg);
  rep.ip = is_interval_preserving(t, cfg);
  rep.adjoint_hom = is_lattice_hom(adj, cfg);
  rep.adjoint_ip = is_interval_preserving(adj, cfg);
  rep.consistent =
      rep.hom.holds == rep.adjoint_ip.holds && rep.ip.holds == rep.adjoint_hom.holds;
  return rep;
}

Verdict check_property(const LatticeMap& t, MapProperty p, const CheckConfig& cfg) {
  switch (p) {
    case MapProperty::Linear: {
      Verdict v = Verdict::yes(Method::Structural);
      v.notes.push_back("all represented maps are linear by construction");
      return v;
    }
    case MapProperty::Hom: return is_lattice_hom(t, cfg);
    case MapProperty::IP: return is_interval_preserving(t, cfg);
    case MapProperty::AIP: return is_almost_interval_preserving(t, cfg);
  }
  throw InternalError("unknown property");
}

namespace {

bool matrix_surjective(const RatMat& m) { return rank(m) == m.rows(); }

/// phi(E+) covers the codomain cone: every basis vector has a nonnegative
/// preimage.
Verdict cone_onto(const RatMat& m) {
  std::vector<std::optional<Rat>> lo(m.cols(), Rat(0));
  std::vector<std::optional<Rat>> hi(m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    FeasibilityProblem p;
    p.equalities = m;
    p.rhs = RatVec::Zero(m.rows());
    p.rhs(r) = 1;
    p.lower = lo;
    p.upper = hi;
    if (!lp_feasible(p).feasible) {
      RatVec e = RatVec::Zero(m.rows());
      e(r) = 1;
      return Verdict::no(Method::LpExact,
                         element_witness("cone-gap",
                                         "basis vector has no nonnegative preimage",
                                         {{"target", Element(e)}}));
    }
  }
  return Verdict::yes(Method::LpExact);
}

}  // namespace

Report verify_pushdown_square(const CommSquare& sq, MapProperty prop,
                              const CheckConfig& cfg) {
  Report rep;
  rep.title = "pushdown square (" + property_name(prop) + ")";
  if (sq.top.kind != LatticeMap::Kind::Matrix || sq.left.kind != LatticeMap::Kind::Matrix ||
      sq.right.kind != LatticeMap::Kind::Matrix || sq.bottom.kind != LatticeMap::Kind::Matrix)
    throw NotMatrixKind("pushdown harness runs on matrix squares");

  const RatMat lhs = sq.bottom.matrix * sq.left.matrix;
  const RatMat rhs = sq.right.matrix * sq.top.matrix;
  if (!exactly_equal(lhs, rhs))
    throw SquareNotCommuting("bottom o left differs from right o top");
  rep.add("square commutes", true, "exact on the standard basis");

  const Verdict left_pos = is_positive(sq.left, cfg);
  rep.add("left map positive", left_pos.holds);
  const Verdict left_cone = cone_onto(sq.left.matrix);
  rep.add("left map onto the positive cone", left_cone.holds);
  const bool right_surj = matrix_surjective(sq.right.matrix);
  rep.add("right map surjective", right_surj);
  const Verdict right_hom = is_lattice_hom(sq.right, cfg);
  rep.add("right map lattice hom", right_hom.holds);

  const bool hypotheses =
      left_pos.holds && left_cone.holds && right_surj && right_hom.holds;
  if (!hypotheses) {
    rep.notes.push_back("hypotheses failed; implication not claimed");
    return rep;
  }

  const Verdict top = check_property(sq.top, prop, cfg);
  const Verdict bottom = check_property(sq.bottom, prop, cfg);
  const bool implication = !top.holds || bottom.holds;
  rep.add("top has " + property_name(prop), top.holds,
          top.holds ? "" : "implication holds vacuously");
  rep.add("implication top => bottom", implication,
          implication ? "" : "counterexample to the pushdown lemma");
  return rep;
}

Report verify_factoring(const std::vector<LatticeMap>& legs, const LatticeMap& chi,
                        MapProperty prop, const CheckConfig& cfg) {
  Report rep;
  rep.title = "factoring harness (" + property_name(prop) + ")";
  if (chi.kind != LatticeMap::Kind::Matrix)
    throw NotMatrixKind("factoring harness runs on matrix data");

  // Sampled union-coverage hypothesis: random points of E must lie in the
  // span of some leg image.
  {
    Rng rng(cfg.seed);
    bool covered = true;
    for (int n = 0; n < std::min(cfg.samples, 10) && covered; ++n) {
      const RatVec x = rng.vec(chi.matrix.cols());
      bool in_some = false;
      for (const LatticeMap& leg : legs) {
        std::vector<RatVec> image;
        for (Index c = 0; c < leg.matrix.cols(); ++c) image.push_back(leg.matrix.col(c));
        if (in_span(image, x)) {
          in_some = true;
          break;
        }
      }
      covered = covered && in_some;
    }
    rep.add("E equals the union of leg images (sampled)", covered,
            covered ? "" : "caller-asserted hypothesis not confirmed by sampling",
            /*conclusive=*/false);
  }

  bool all_composites = true;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const Verdict v = check_property(compose(chi, legs[i]), prop, cfg);
    rep.add("chi o leg_" + std::to_string(i + 1) + " " + property_name(prop), v.holds);
    all_composites = all_composites && v.holds;
  }
  const Verdict whole = check_property(chi, prop, cfg);
  rep.add("chi " + property_name(prop), whole.holds);
  const bool equivalence = all_composites == whole.holds;
  rep.add("equivalence composites <=> chi", equivalence,
          equivalence ? "" : "factoring equivalence violated");
  return rep;
}

Verdict is_contractive(const LatticeMap& t, const CheckConfig&) {
  if (t.kind == LatticeMap::Kind::Sequence || t.kind == LatticeMap::Kind::Embed) {
    // Averaging blocks, shifts, inclusions and coordinate embeddings do not
    // increase any of the model norms.
    Verdict v = Verdict::yes(Method::Structural);
    v.notes.push_back("transformer is a norm contraction on every model norm");
    return v;
  }
  const RatMat& m = t.matrix;
  const FinNorm dn = t.domain.fin_norm;
  const FinNorm cn = t.codomain.fin_norm;
  auto col_norm_le_one = [&](Index c) {
    Rat acc = 0;
    switch (cn) {
      case FinNorm::Linf:
        for (Index r = 0; r < m.rows(); ++r) acc = std::max(acc, Rat(abs(m(r, c))));
        return acc <= 1;
      case FinNorm::L1:
        for (Index r = 0; r < m.rows(); ++r) acc += abs(m(r, c));
        return acc <= 1;
      case FinNorm::L2:
        for (Index r = 0; r < m.rows(); ++r) acc += m(r, c) * m(r, c);
        return acc <= 1;
    }
    return false;
  };
  if (dn == FinNorm::L1) {
    // ||T||_{1->q} = max_j ||column_j||_q, exactly.
    for (Index c = 0; c < m.cols(); ++c)
      if (!col_norm_le_one(c)) {
        Witness w;
        w.kind = "column-norm";
        w.text = "column " + std::to_string(c + 1) + " exceeds norm 1";
        return Verdict::no(Method::Structural, std::move(w));
      }
    return Verdict::yes(Method::Structural);
  }
  if (dn == FinNorm::Linf && cn == FinNorm::Linf) {
    for (Index r = 0; r < m.rows(); ++r) {
      Rat acc = 0;
      for (Index c = 0; c < m.cols(); ++c) acc += abs(m(r, c));
      if (acc > 1) {
        Witness w;
        w.kind = "row-sum";
        w.text = "row " + std::to_string(r + 1) + " has absolute sum " + rat_to_string(acc);
        return Verdict::no(Method::Structural, std::move(w));
      }
    }
    return Verdict::yes(Method::Structural);
  }
  if (dn == FinNorm::L2 && cn == FinNorm::L2) {
    // Schur bound: ||T||_2^2 <= (max row sum)(max col sum); sufficient only.
    Rat row = 0, col = 0;
    for (Index r = 0; r < m.rows(); ++r) {
      Rat acc = 0;
      for (Index c = 0; c < m.cols(); ++c) acc += abs(m(r, c));
      row = std::max(row, acc);
    }
    for (Index c = 0; c < m.cols(); ++c) {
      Rat acc = 0;
      for (Index r = 0; r < m.rows(); ++r) acc += abs(m(r, c));
      col = std::max(col, acc);
    }
    if (row * col <= 1) {
      Verdict v = Verdict::yes(Method::Structural);
      v.notes.push_back("Schur bound");
      return v;
    }
    return Verdict::no_inconclusive(Method::Structural,
                                    "Schur bound exceeded; exact l2 operator norm "
                                    "is not rational in general");
  }
  return Verdict::no_inconclusive(Method::Structural,
                                  "no exact operator-norm formula for this norm pair");
}

}  // namespace latlim
