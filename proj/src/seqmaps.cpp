#include "latlim/seqmaps.hpp"

#include <algorithm>
#include <numeric>

#include "latlim/errors.hpp"

namespace latlim {

namespace {

Rat half_sum(const Rat& a, const Rat& b) { return (a + b) / 2; }

void check_indices(Index i, Index j) {
  if (i < 1 || j < i) throw BadIndices("averaging indices need 1 <= i <= j");
}

}  // namespace

EPSeq averaging_map(Index i, Index j, const EPSeq& s) {
  check_indices(i, j);
  const Index i0 = i - 1;       // 0-based block start
  const Index m = j - i;        // averaged pairs
  if (m == 0) return s;
  const Index p = s.prefix_len();
  const Index d = s.period_len();
  // Output prefix long enough that every later term is a plain shifted read
  // from the input's periodic part.
  const Index n = std::max(i0 + m, p > m ? p - m : Index{0});
  std::vector<Rat> prefix(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    if (k < i0)
      prefix[static_cast<std::size_t>(k)] = s.term(k);
    else if (k < i0 + m)
      prefix[static_cast<std::size_t>(k)] =
          half_sum(s.term(i0 + 2 * (k - i0)), s.term(i0 + 2 * (k - i0) + 1));
    else
      prefix[static_cast<std::size_t>(k)] = s.term(k + m);
  }
  std::vector<Rat> period(static_cast<std::size_t>(d));
  for (Index t = 0; t < d; ++t)
    period[static_cast<std::size_t>(t)] =
        s.period()[static_cast<std::size_t>((n + m - p + t) % d)];
  return EPSeq(std::move(prefix), std::move(period));
}

EPSeq xprime(Index i, const EPSeq& s) {
  if (i < 1) throw BadIndices("xprime needs i >= 1");
  const Index i0 = i - 1;
  const Index p = s.prefix_len();
  const Index d = s.period_len();
  const Index d2 = d % 2 == 0 ? d : 2 * d;  // doubled when odd
  // First averaged slot whose pair lies entirely in the periodic part.
  Index q = 0;
  while (i0 + 2 * q < p) ++q;
  const Index n = i0 + q;
  std::vector<Rat> prefix(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    if (k < i0)
      prefix[static_cast<std::size_t>(k)] = s.term(k);
    else
      prefix[static_cast<std::size_t>(k)] =
          half_sum(s.term(i0 + 2 * (k - i0)), s.term(i0 + 2 * (k - i0) + 1));
  }
  const Index phase = i0 + 2 * q - p;  // >= 0 by choice of q
  std::vector<Rat> period(static_cast<std::size_t>(d2 / 2));
  for (Index t = 0; t < d2 / 2; ++t) {
    const Rat& a = s.period()[static_cast<std::size_t>((phase + 2 * t) % d)];
    const Rat& b = s.period()[static_cast<std::size_t>((phase + 2 * t + 1) % d)];
    period[static_cast<std::size_t>(t)] = half_sum(a, b);
  }
  return EPSeq(std::move(prefix), std::move(period));
}

EPSeq averaging_section(Index i, Index j, const EPSeq& y) {
  check_indices(i, j);
  const Index i0 = i - 1;
  const Index m = j - i;
  if (m == 0) return y;
  const Index p = y.prefix_len();
  const Index d = y.period_len();
  const Index n = std::max(i0 + 2 * m, p + m);
  std::vector<Rat> prefix(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    if (k < i0)
      prefix[static_cast<std::size_t>(k)] = y.term(k);
    else if (k < i0 + 2 * m)
      prefix[static_cast<std::size_t>(k)] = y.term(i0 + (k - i0) / 2);
    else
      prefix[static_cast<std::size_t>(k)] = y.term(k - m);
  }
  std::vector<Rat> period(static_cast<std::size_t>(d));
  for (Index t = 0; t < d; ++t)
    period[static_cast<std::size_t>(t)] =
        y.period()[static_cast<std::size_t>((n - m - p + t) % d)];
  return EPSeq(std::move(prefix), std::move(period));
}

EPSeq xprime_section(Index i, const EPSeq& y) {
  if (i < 1) throw BadIndices("xprime_section needs i >= 1");
  const Index i0 = i - 1;
  const Index p = y.prefix_len();
  const Index d = y.period_len();
  const Index tail = p > i0 ? p - i0 : Index{0};
  const Index n = i0 + 2 * tail;
  std::vector<Rat> prefix(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k)
    prefix[static_cast<std::size_t>(k)] = k < i0 ? y.term(k) : y.term(i0 + (k - i0) / 2);
  // Entry n+t duplicates y's periodic entry at offset c0 + t/2.
  const Index c0 = i0 + tail - p >= 0 ? i0 + tail - p : Index{0};
  std::vector<Rat> period(static_cast<std::size_t>(2 * d));
  for (Index t = 0; t < 2 * d; ++t)
    period[static_cast<std::size_t>(t)] =
        y.period()[static_cast<std::size_t>((c0 + t / 2) % d)];
  return EPSeq(std::move(prefix), std::move(period));
}

EPSeq averaging_preimage_in_box(Index i, Index j, const EPSeq& x, const EPSeq& y) {
  check_indices(i, j);
  if (!y.is_nonneg() || !ep_leq(y, averaging_map(i, j, x)))
    throw PreconditionViolated("need 0 <= y <= averaging_map(i,j,x)");
  const Index i0 = i - 1;
  const Index m = j - i;
  if (m == 0) return y;
  const Index d = std::lcm(x.period_len(), y.period_len());
  const Index n = std::max({x.prefix_len(), y.prefix_len() + m, i0 + 2 * m});
  std::vector<Rat> prefix(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    if (k < i0) {
      prefix[static_cast<std::size_t>(k)] = y.term(k);
    } else if (k < i0 + 2 * m) {
      // Riesz split of the pair: z_a = min(2 y_t, x_a), z_b the remainder.
      const Index t = (k - i0) / 2;
      const Rat target = 2 * y.term(i0 + t);
      const Rat& xa = x.term(i0 + 2 * t);
      const Rat za = std::min(target, xa);
      prefix[static_cast<std::size_t>(k)] = (k - i0) % 2 == 0 ? za : target - za;
    } else {
      prefix[static_cast<std::size_t>(k)] = y.term(k - m);
    }
  }
  std::vector<Rat> period(static_cast<std::size_t>(d));
  for (Index t = 0; t < d; ++t) period[static_cast<std::size_t>(t)] = y.term(n - m + t);
  return EPSeq(std::move(prefix), std::move(period));
}

EPSeq SeqTransform::apply(const EPSeq& s) const {
  switch (kind) {
    case Kind::Identity: return s;
    case Kind::Zero: return EPSeq::zero();
    case Kind::Averaging: return averaging_map(i, j, s);
    case Kind::XPrimeAvg: return xprime(i, s);
  }
  throw InternalError("unknown sequence transform");
}

std::string SeqTransform::name() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Zero: return "zero";
    case Kind::Averaging:
      return "averaging(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::XPrimeAvg: return "pair-average-from(" + std::to_string(i) + ")";
  }
  return "?";
}

EPSeq apply_pipeline(const std::vector<SeqTransform>& pipeline, const EPSeq& s) {
  EPSeq out = s;
  for (const SeqTransform& t : pipeline) out = t.apply(out);
  return out;
}

TailBehavior tail_behavior(const SeqTransform& t) {
  switch (t.kind) {
    case SeqTransform::Kind::Identity: return {TailBehavior::Kind::Shift, 0, 0, 0};
    case SeqTransform::Kind::Zero: return {TailBehavior::Kind::Zero, 0, 0, 0};
    case SeqTransform::Kind::Averaging:
      // Rows past the averaged block read input r + (j-i).
      return {TailBehavior::Kind::Shift, t.i - 1 + (t.j - t.i), t.j - t.i, 0};
    case SeqTransform::Kind::XPrimeAvg:
      // Row r >= i-1 averages inputs 2r-(i-1) and the next.
      return {TailBehavior::Kind::PairAvg, t.i - 1, 0, t.i - 1};
  }
  throw InternalError("unknown sequence transform");
}

namespace {

std::optional<TailBehavior> compose_tails(const TailBehavior& outer,
                                          const TailBehavior& inner) {
  using K = TailBehavior::Kind;
  if (outer.kind == K::Zero || inner.kind == K::Zero)
    return TailBehavior{K::Zero, 0, 0, 0};
  if (outer.kind == K::Shift && inner.kind == K::Shift) {
    // Row r reads inner row r+s, valid once r+s is in the inner regime.
    const Index from = std::max(outer.from_row,
                                inner.from_row > outer.shift ? inner.from_row - outer.shift
                                                             : Index{0});
    return TailBehavior{K::Shift, from, outer.shift + inner.shift, 0};
  }
  if (outer.kind == K::PairAvg && inner.kind == K::Shift) {
    // Row r averages inner rows 2r-a, 2r-a+1, each reading input +s further.
    const Index need = inner.from_row + outer.anchor;  // 2r >= need
    const Index from = std::max(outer.from_row, (need + 1) / 2);
    return TailBehavior{K::PairAvg, from, 0, outer.anchor - inner.shift};
  }
  if (outer.kind == K::Shift && inner.kind == K::PairAvg) {
    const Index from = std::max(outer.from_row,
                                inner.from_row > outer.shift ? inner.from_row - outer.shift
                                                             : Index{0});
    return TailBehavior{K::PairAvg, from, 0, inner.anchor - 2 * outer.shift};
  }
  return std::nullopt;  // PairAvg of PairAvg: not representable here
}

}  // namespace

std::optional<TailBehavior> tail_behavior(const std::vector<SeqTransform>& pipeline) {
  TailBehavior acc{TailBehavior::Kind::Shift, 0, 0, 0};
  for (const SeqTransform& t : pipeline) {
    const auto composed = compose_tails(tail_behavior(t), acc);
    if (!composed) return std::nullopt;
    acc = *composed;
  }
  return acc;
}

Index window_cols(const SeqTransform& t, Index rows) {
  switch (t.kind) {
    case SeqTransform::Kind::Identity:
    case SeqTransform::Kind::Zero: return rows;
    case SeqTransform::Kind::Averaging:
      return std::max(rows + (t.j - t.i), (t.i - 1) + 2 * (t.j - t.i));
    case SeqTransform::Kind::XPrimeAvg:
      return rows > t.i - 1 ? 2 * rows - (t.i - 1) : rows;
  }
  throw InternalError("unknown sequence transform");
}

Index window_cols(const std::vector<SeqTransform>& pipeline, Index rows) {
  Index need = rows;
  for (auto it = pipeline.rbegin(); it != pipeline.rend(); ++it)
    need = window_cols(*it, need);
  return need;
}

RatMat window_matrix(const SeqTransform& t, Index rows, Index cols) {
  if (cols < window_cols(t, rows))
    throw DimensionMismatch("window too narrow for transformer");
  RatMat w = RatMat::Zero(rows, cols);
  const Index i0 = t.i - 1;
  switch (t.kind) {
    case SeqTransform::Kind::Identity:
      for (Index r = 0; r < rows; ++r) w(r, r) = 1;
      break;
    case SeqTransform::Kind::Zero:
      break;
    case SeqTransform::Kind::Averaging: {
      const Index m = t.j - t.i;
      for (Index r = 0; r < rows; ++r) {
        if (r < i0) {
          w(r, r) = 1;
        } else if (r < i0 + m) {
          w(r, i0 + 2 * (r - i0)) = rat(1, 2);
          w(r, i0 + 2 * (r - i0) + 1) = rat(1, 2);
        } else {
          w(r, r + m) = 1;
        }
      }
      break;
    }
    case SeqTransform::Kind::XPrimeAvg:
      for (Index r = 0; r < rows; ++r) {
        if (r < i0) {
          w(r, r) = 1;
        } else {
          w(r, i0 + 2 * (r - i0)) = rat(1, 2);
          w(r, i0 + 2 * (r - i0) + 1) = rat(1, 2);
        }
      }
      break;
  }
  return w;
}

RatMat window_matrix(const std::vector<SeqTransform>& pipeline, Index rows, Index cols) {
  if (cols < window_cols(pipeline, rows))
    throw DimensionMismatch("window too narrow for pipeline");
  if (pipeline.empty()) {
    RatMat w = RatMat::Zero(rows, cols);
    for (Index r = 0; r < rows; ++r) w(r, r) = 1;
    return w;
  }
  // Apply from the back: the last transform produces the output rows.
  Index out_rows = rows;
  RatMat acc;
  bool first = true;
  for (auto it = pipeline.rbegin(); it != pipeline.rend(); ++it) {
    const Index in_cols = window_cols(*it, out_rows);
    RatMat w = window_matrix(*it, out_rows, in_cols);
    acc = first ? std::move(w) : RatMat(acc * w);
    first = false;
    out_rows = in_cols;
  }
  if (acc.cols() < cols) {
    RatMat padded = RatMat::Zero(acc.rows(), cols);
    padded.block(0, 0, acc.rows(), acc.cols()) = acc;
    return padded;
  }
  return acc;
}

std::optional<bool> pipelines_equal(const std::vector<SeqTransform>& a,
                                    const std::vector<SeqTransform>& b) {
  const auto ta = tail_behavior(a);
  const auto tb = tail_behavior(b);
  if (!ta || !tb) return std::nullopt;
  // from_row marks where the regime is valid, not what the map does; rows
  // before the larger threshold are compared through the window matrices.
  const bool same_tail = ta->kind == tb->kind && ta->shift == tb->shift &&
                         ta->anchor == tb->anchor;
  if (!same_tail) return false;
  const Index rows = std::max({ta->from_row, tb->from_row, Index{1}});
  const Index cols = std::max(window_cols(a, rows), window_cols(b, rows));
  return exactly_equal(window_matrix(a, rows, cols), window_matrix(b, rows, cols));
}

}  // namespace latlim
