#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latlim/epseq.hpp"
#include "latlim/types.hpp"

namespace latlim {

/// phi_{ji} of the averaging systems: coordinates before i unchanged, the
/// block x_i..x_{2j-i-1} replaced by its j-i pairwise averages, the rest of
/// the sequence shifted left accordingly. Indices are 1-based, 1 <= i <= j.
EPSeq averaging_map(Index i, Index j, const EPSeq& s);

/// x' of the same construction: all of the tail from position i averaged in
/// pairs, (x_1,..,x_{i-1},(x_i+x_{i+1})/2,(x_{i+2}+x_{i+3})/2,...). An
/// odd-length period is doubled first so the result stays eventually periodic.
EPSeq xprime(Index i, const EPSeq& s);

/// Right inverse of averaging_map(i,j,.): duplicates the averaged block, so
/// averaging_map(i, j, averaging_section(i, j, y)) == y.
EPSeq averaging_section(Index i, Index j, const EPSeq& y);

/// Right inverse of xprime(i,.).
EPSeq xprime_section(Index i, const EPSeq& y);

/// Exact preimage witness for the interval [0, x]: given y with
/// 0 <= y <= averaging_map(i,j,x), returns z with 0 <= z <= x and
/// averaging_map(i,j,z) == y. Each averaged pair is split by the Riesz
/// decomposition of 2*y over the pair bounds.
EPSeq averaging_preimage_in_box(Index i, Index j, const EPSeq& x, const EPSeq& y);

/// Named banded transformers of the sequence models.
struct SeqTransform {
  enum class Kind { Identity, Zero, Averaging, XPrimeAvg } kind = Kind::Identity;
  Index i = 1;
  Index j = 1;

  static SeqTransform identity() { return {}; }
  static SeqTransform zero() { return {Kind::Zero, 1, 1}; }
  static SeqTransform averaging(Index i, Index j) { return {Kind::Averaging, i, j}; }
  static SeqTransform xprime_avg(Index i) { return {Kind::XPrimeAvg, i, i}; }

  EPSeq apply(const EPSeq& s) const;
  std::string name() const;
  bool operator==(const SeqTransform& o) const = default;
};

EPSeq apply_pipeline(const std::vector<SeqTransform>& pipeline, const EPSeq& s);

/// How a banded transformer acts on all sufficiently late output rows. Window
/// matrices plus equal tail behavior decide exact equality of two pipelines.
struct TailBehavior {
  enum class Kind { Zero, Shift, PairAvg } kind = Kind::Shift;
  Index from_row = 0;  // 0-based first output row of the regime
  Index shift = 0;     // Shift: row r reads input r+shift
  Index anchor = 0;    // PairAvg: row r averages inputs 2r-anchor, 2r-anchor+1

  bool operator==(const TailBehavior& o) const = default;
};

TailBehavior tail_behavior(const SeqTransform& t);
std::optional<TailBehavior> tail_behavior(const std::vector<SeqTransform>& pipeline);

/// Matrix of the transformer's first `rows` output coordinates as a function
/// of the first `cols` inputs. `cols` must cover every input the window reads;
/// window_cols() gives the least admissible value.
Index window_cols(const SeqTransform& t, Index rows);
Index window_cols(const std::vector<SeqTransform>& pipeline, Index rows);
RatMat window_matrix(const SeqTransform& t, Index rows, Index cols);
RatMat window_matrix(const std::vector<SeqTransform>& pipeline, Index rows, Index cols);

/// Exact equality of two pipelines as linear maps on all sequences: window
/// matrices agree on every row before the tail regimes and the tail regimes
/// coincide. Returns nullopt when a tail behavior is not representable (the
/// caller falls back to sampling).
std::optional<bool> pipelines_equal(const std::vector<SeqTransform>& a,
                                    const std::vector<SeqTransform>& b);

}  // namespace latlim
