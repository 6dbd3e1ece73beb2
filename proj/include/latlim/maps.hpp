#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latlim/seqmaps.hpp"
#include "latlim/simplex.hpp"
#include "latlim/spaces.hpp"
#include "latlim/verdict.hpp"

namespace latlim {

/// A linear map between model spaces: a rational matrix between coordinate
/// lattices, a pipeline of named sequence transformers, or an embedding of a
/// coordinate lattice into a sequence model (optionally followed by a
/// pipeline).
struct LatticeMap {
  enum class Kind { Matrix, Sequence, Embed };
  Kind kind = Kind::Matrix;
  RatMat matrix;
  std::vector<SeqTransform> pipeline;
  /// Embed kind: v |-> pipeline(embedded(embed_matrix * v)); composing an
  /// embedding with a matrix map folds into this factor.
  RatMat embed_matrix;
  SpaceDesc domain;
  SpaceDesc codomain;

  static LatticeMap from_matrix(RatMat m, FinNorm n = FinNorm::Linf);
  static LatticeMap averaging(Index i, Index j, SpaceTag tag);
  static LatticeMap averaging_leg(Index i, SpaceTag tag);  // x -> x' into the model
  static LatticeMap inclusion(SpaceDesc dom, SpaceDesc cod);
  static LatticeMap identity_on(SpaceDesc sp);
  static LatticeMap zero_between(SpaceDesc dom, SpaceDesc cod);
  static LatticeMap embedding(Index n, SpaceTag tag);

  Element apply(const Element& x) const;
  EPSeq apply_seq(const EPSeq& s) const;

  /// The first `rows` output coordinates as an exact matrix of the first
  /// window_cols inputs (sequence and embed kinds; matrices return themselves).
  RatMat truncation(Index rows) const;
  Index truncation_cols(Index rows) const;

  std::string describe() const;
};

LatticeMap compose(const LatticeMap& s, const LatticeMap& t);
LatticeMap adjoint(const LatticeMap& t);

/// Exact equality as linear maps (window + tail comparison for sequence
/// kinds); nullopt when undecidable by the banded representation.
std::optional<bool> maps_equal(const LatticeMap& a, const LatticeMap& b);

Verdict is_positive(const LatticeMap& t, const CheckConfig& cfg = {});
Verdict is_lattice_hom(const LatticeMap& t, const CheckConfig& cfg = {});
Verdict is_interval_preserving(const LatticeMap& t, const CheckConfig& cfg = {});
Verdict is_almost_interval_preserving(const LatticeMap& t, const CheckConfig& cfg = {});

/// Definitional interval-preservation oracle for matrices: picks a strictly
/// positive x and feasibility-checks every vertex of [0, Tx] against T[0, x].
/// Independent of the per-basis-vector reduction used by the checker.
Verdict ip_definitional_oracle(const RatMat& t, const RatVec& x, std::uint64_t cap);

/// Definitional lattice-homomorphism oracle: T(x v y) = Tx v Ty on seeded
/// samples.
Verdict hom_definitional_oracle(const RatMat& t, const CheckConfig& cfg);

/// Separation certificate refuting almost interval preservation of a sequence
/// map: y lies in [0, Tx] but every point of T([0,x]) stays at sup-distance
/// >= bound from y already on the listed coordinate window.
struct SeparationCertificate {
  EPSeq x;
  EPSeq y;
  Index window = 0;  // coordinates 1..window are used
  Rat bound;
  std::string family;  // description of the image constraints on the window
};

bool verify_separation(const LatticeMap& t, const SeparationCertificate& cert);

/// Exact sup-distance (restricted to the coordinate window) between y and the
/// image T([0,x] in the domain model), as an epigraph LP over the window.
Rat window_distance(const LatticeMap& t, const EPSeq& x, const EPSeq& y, Index window);

struct DualityReport {
  Verdict hom;
  Verdict ip;
  Verdict adjoint_hom;
  Verdict adjoint_ip;
  bool consistent = false;
};

/// Finite-dimensional duality: lattice homomorphism <=> transpose interval
/// preserving, in both directions. A discrepancy is an internal-consistency
/// failure.
DualityReport check_duality(const LatticeMap& t, const CheckConfig& cfg = {});

/// Commutative square: bottom o left == right o top.
struct CommSquare {
  LatticeMap top;     // psi : E -> F
  LatticeMap left;    // phi_E : E -> E'
  LatticeMap right;   // phi_F : F -> F'
  LatticeMap bottom;  // psi' : E' -> F'
};

enum class MapProperty { Linear, Hom, IP, AIP };
std::string property_name(MapProperty p);
Verdict check_property(const LatticeMap& t, MapProperty p, const CheckConfig& cfg = {});

/// Hypotheses: left positive and onto the positive cone; right a surjective
/// lattice homomorphism. Conclusion: if the top map has the property then so
/// does the bottom one. Throws SquareNotCommuting.
Report verify_pushdown_square(const CommSquare& sq, MapProperty prop,
                              const CheckConfig& cfg = {});

/// Equivalence "all chi o leg_i have the property <=> chi has it" evaluated
/// with the module's checkers; the union-coverage hypothesis is sampled and
/// reported.
Report verify_factoring(const std::vector<LatticeMap>& legs, const LatticeMap& chi,
                        MapProperty prop, const CheckConfig& cfg = {});

/// Contractivity of a map between normed model spaces, exact where the norms
/// make the operator norm rational (sup and l1 norms); the l2 case uses the
/// Schur bound as a sufficient condition.
Verdict is_contractive(const LatticeMap& t, const CheckConfig& cfg = {});

}  // namespace latlim
