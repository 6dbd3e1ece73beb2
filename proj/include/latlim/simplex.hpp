#pragma once

#include <optional>
#include <vector>

#include "latlim/types.hpp"

namespace latlim {

/// Feasibility / optimization problems in equality-plus-box form:
///   A x = b,  lower <= x <= upper  (entries of lower/upper may be absent,
///   meaning -inf / +inf).
struct FeasibilityProblem {
  RatMat equalities;  // m x n
  RatVec rhs;         // m
  std::vector<std::optional<Rat>> lower;  // n entries
  std::vector<std::optional<Rat>> upper;  // n entries

  Index num_vars() const { return equalities.cols(); }
  Index num_rows() const { return equalities.rows(); }
  void validate() const;

  /// All constraints hold exactly at x.
  bool satisfied_by(const RatVec& x) const;

  static FeasibilityProblem boxed(RatMat a, RatVec b, RatVec lo, RatVec hi);
};

/// Infeasibility certificate: a row combination y with
///   sup { (y^T A) x : lower <= x <= upper }  <  y^T b,
/// so no x in the box satisfies A x = b. `box_sup` and `rhs_value` record the
/// two sides for display; `valid_for` recomputes them.
struct FarkasCertificate {
  RatVec y;
  Rat box_sup;
  Rat rhs_value;
};

bool farkas_valid(const FeasibilityProblem& p, const FarkasCertificate& cert);

struct FeasibilityResult {
  bool feasible = false;
  RatVec witness;  // satisfies all constraints exactly when feasible
  std::optional<FarkasCertificate> certificate;
  std::optional<Index> inconsistent_bound;  // lower(j) > upper(j) short-circuit
};

FeasibilityResult lp_feasible(const FeasibilityProblem& p);

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Optimality certificate: multipliers y with reduced costs d = c - A^T y such
/// that every feasible x has c.x >= y.b + sum_j min(d_j l_j, d_j u_j) = bound,
/// and bound equals the reported optimum.
struct DualCertificate {
  RatVec y;
  RatVec reduced_costs;
  Rat bound;
};

bool dual_bound_valid(const FeasibilityProblem& p, const RatVec& cost,
                      const DualCertificate& cert);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec witness;
  std::optional<DualCertificate> optimality;
  std::optional<FarkasCertificate> infeasibility;
  std::optional<Index> inconsistent_bound;
  // Unbounded: witness + t * ray stays feasible for all t >= 0 with
  // cost.ray < 0.
  RatVec ray;
};

/// Exact bounded-variable simplex, two phases, Bland's rule (deterministic and
/// cycle-free). No floating point anywhere.
LpResult lp_minimize(const RatVec& cost, const FeasibilityProblem& p);

/// One affine expression coeffs.x + constant.
struct AffineTerm {
  RatVec coeffs;
  Rat constant;
};

/// Exact minimum of max_k |term_k(x)| over the box, via the epigraph LP.
/// Throws UnboundedError if the underlying LP is unbounded (cannot happen for
/// absolute-value terms, whose epigraph variable is bounded below by 0) and
/// PreconditionViolated when no term is given.
Rat minimize_linear_over_max(const std::vector<AffineTerm>& terms,
                             const std::vector<std::optional<Rat>>& lower,
                             const std::vector<std::optional<Rat>>& upper);

/// Same minimum over a fully unconstrained variable vector.
Rat minimize_linear_over_max(const std::vector<AffineTerm>& terms, Index num_vars);

}  // namespace latlim
