#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latlim/maps.hpp"
#include "latlim/verdict.hpp"

namespace latlim {

/// Morphism classes of the categories under consideration. The first group
/// admits the standard direct-limit construction; for the exceptional tags the
/// construction is only attempted and reports say which guarantee is missing.
enum class CategoryTag {
  VL_LH,
  VL_IPLH,
  NL_LH,
  NL_AIPLH,
  NL_IPLH,
  BL_LH,
  BL_AIPLH,
  // exceptional
  VL_IP,
  NL_IP,
  NL_AIP,
  BL_IP,
  BL_AIP,
  BL_IPLH,
};

std::string tag_name(CategoryTag t);
std::optional<CategoryTag> tag_from_name(const std::string& name);
bool tag_is_normed(CategoryTag t);   // normed or Banach
bool tag_is_banach(CategoryTag t);
bool tag_requires_hom(CategoryTag t);
bool tag_requires_ip(CategoryTag t);
bool tag_requires_aip(CategoryTag t);  // AIP or stronger
bool tag_exceptional(CategoryTag t);

/// A direct system over the natural numbers (generated edges) or an explicit
/// finite poset. Systems are immutable after construction.
struct DirectSystem {
  CategoryTag category = CategoryTag::VL_LH;

  enum class IndexKind { NatChain, Poset } index_kind = IndexKind::NatChain;
  int depth_hint = 8;

  enum class Generator {
    Averaging,        // E_i = sequence model, edges phi_ji
    CoordInclusion,   // E_i = Q^i, edges [I;0]
    CTailInclusion,   // E_i = constant-tail sublattices of c
    ZeroChain,        // fixed object, zero edges
    ExplicitChain,    // per-step matrices
    ExplicitPoset,
  } generator = Generator::Averaging;

  SpaceTag seq_tag;                  // Averaging / CTailInclusion ambient
  SpaceDesc fixed_object;            // ZeroChain
  std::vector<Index> chain_dims;     // ExplicitChain objects (FinDim)
  std::vector<RatMat> chain_steps;   // ExplicitChain steps E_i -> E_{i+1}
  FinNorm fin_norm = FinNorm::Linf;  // FinDim objects in normed categories

  int poset_size = 0;
  std::map<std::pair<int, int>, RatMat> poset_edges;  // explicit (i,j), i < j
  std::vector<SpaceDesc> poset_objects;

  static DirectSystem averaging_system(SpaceTag tag, CategoryTag cat, int depth_hint = 8);
  static DirectSystem coord_inclusion_system(CategoryTag cat, int depth_hint = 8);
  static DirectSystem ctail_system(CategoryTag cat, int depth_hint = 8);
  static DirectSystem zero_chain(SpaceDesc object, CategoryTag cat, int depth_hint = 8);
  static DirectSystem explicit_chain(std::vector<Index> dims, std::vector<RatMat> steps,
                                     CategoryTag cat, FinNorm n = FinNorm::Linf);
  static DirectSystem explicit_poset(int size, std::vector<SpaceDesc> objects,
                                     std::map<std::pair<int, int>, RatMat> edges,
                                     CategoryTag cat);

  int max_index() const;
  SpaceDesc object(int i) const;
  LatticeMap edge(int i, int j) const;  // 1 <= i <= j
  bool index_leq(int i, int j) const;
  std::optional<int> common_upper(int i, int j) const;
};

Report validate_system(const DirectSystem& sys, int depth, const CheckConfig& cfg = {});

/// Class representative of the standard construction: the quotient space is
/// never materialized, equality of classes is the computable content.
struct ColimitElement {
  const DirectSystem* system = nullptr;
  int index = 1;
  Element rep;
};

struct EqualityMode {
  enum class Kind { Exact, Seminorm } kind = Kind::Exact;
  int k_max = 12;       // Exact: search bound
  Index horizon = 12;   // Seminorm: norm-sequence horizon
  static EqualityMode exact(int k_max) { return {Kind::Exact, k_max, 12}; }
  static EqualityMode seminorm(Index horizon) { return {Kind::Seminorm, 12, horizon}; }
};

Verdict elements_equal(const ColimitElement& a, const ColimitElement& b,
                       const EqualityMode& mode, const CheckConfig& cfg = {});

enum class LatticeOp { Sup, Inf, Abs };

struct ColimitOpResult {
  ColimitElement value;
  std::vector<std::string> notes;
};

ColimitOpResult colimit_lattice_op(LatticeOp op, const ColimitElement& a,
                                   const ColimitElement& b);

/// The norm of a class is inf over j of the connecting-image norms; for
/// contractive systems that sequence is nonincreasing, and the bracket records
/// it together with a certified limit when a stabilization argument applies.
struct NormBracket {
  std::vector<NormValue> upper_sequence;  // ||phi_ji x|| for j = i, i+1, ...
  std::optional<NormValue> certified_limit;
  std::string certificate;  // "support-stabilization" | "eventual-constancy" |
                            // "zero-edges" | "isometric-edges" | "" (none)
};

NormBracket colimit_norm(const ColimitElement& a, Index horizon);

/// Compatible cone over a system.
struct Cone {
  enum class Kind {
    AveragingLegs,  // leg_i = pairwise-average-from-i into the sequence model
    EmbedLegs,      // leg_i embeds Q^dim(i) into the sequence model
    InclusionLegs,  // leg_i = inclusion into the ambient sequence space
    ZeroLegs,
    Explicit,
  } kind = Kind::AveragingLegs;
  SpaceDesc target;
  std::vector<LatticeMap> legs;  // Explicit (1-based index i -> legs[i-1])

  LatticeMap leg(int i, const DirectSystem& sys) const;
  static Cone averaging_model(SpaceTag tag);
  static Cone embed_model(SpaceTag tag);
  static Cone inclusion_model(SpaceTag tag);
};

/// chi(class of (i, x)) := leg_i(x); compatibility is validated up to the
/// given depth before the map is handed out.
struct FactoringMap {
  const DirectSystem* system = nullptr;
  Cone cone;
  Element apply(const ColimitElement& e) const;
};

FactoringMap build_factoring_map(const DirectSystem& sys, const Cone& cone, int depth,
                                 const CheckConfig& cfg = {});

/// Direct limits of systems whose connecting maps are all zero: the top
/// object when the index set has a largest element, the zero space otherwise.
struct LimitDescription {
  bool zero_limit = false;
  int top_index = 0;  // meaningful when !zero_limit
  SpaceDesc object;
};

LimitDescription degenerate_limit(const DirectSystem& sys);

/// psi_i into the truncated product of the objects from i is interval
/// preserving exactly when every connecting map out of i vanishes; both sides
/// are evaluated and compared.
Report check_psi_ip_iff_zero(const DirectSystem& sys, int i, int depth,
                             const CheckConfig& cfg = {});

/// Structure of the standard-construction limit on the model target: nested
/// images, sublattice/ideal status per category tag, image coincidence for
/// surjective systems.
Report verify_structure(const DirectSystem& sys, const Cone& cone, int depth,
                        const CheckConfig& cfg = {});

/// Runs the target tag's morphism checks on every leg; when they hold the
/// limit serves in the stronger category.
Verdict promote_limit(const DirectSystem& sys, const Cone& cone, CategoryTag target_tag,
                      int depth, const CheckConfig& cfg = {});

}  // namespace latlim
