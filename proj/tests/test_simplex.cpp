#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latlim/boxes.hpp"
#include "latlim/lattice.hpp"
#include "latlim/rng.hpp"
#include "latlim/simplex.hpp"

using namespace latlim;

namespace {

FeasibilityProblem midpoint_problem() {
  // z = z1/2 + z2/2 with 0 <= z1,z2 <= 1, target 1/2.
  RatMat a(1, 2);
  a << rat(1, 2), rat(1, 2);
  RatVec b(1);
  b << rat(1, 2);
  return FeasibilityProblem::boxed(a, b, rat_vec({0, 0}), rat_vec({1, 1}));
}

}  // namespace

TEST_CASE("midpoint system is feasible with an exact witness") {
  const auto r = lp_feasible(midpoint_problem());
  REQUIRE(r.feasible);
  CHECK(midpoint_problem().satisfied_by(r.witness));
}

TEST_CASE("bound violation is infeasible with a verifiable certificate") {
  RatMat a(1, 1);
  a << 1;
  RatVec b(1);
  b << 2;
  const auto p = FeasibilityProblem::boxed(a, b, rat_vec({0}), rat_vec({1}));
  const auto r = lp_feasible(p);
  REQUIRE_FALSE(r.feasible);
  REQUIRE(r.certificate.has_value());
  CHECK(farkas_valid(p, *r.certificate));
}

TEST_CASE("truncated averaging system: A z = v with 0 <= z <= e1 hits z = e1") {
  // Direct-substitution oracle: v = A e1, so e1 itself is a witness.
  RatMat a(3, 4);
  a << rat(1, 2), rat(1, 2), 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1;
  const RatVec v = rat_vec({rat(1, 2), 0, 0});
  const auto p = FeasibilityProblem::boxed(a, v, rat_vec({0, 0, 0, 0}), rat_vec({1, 0, 0, 0}));
  const auto r = lp_feasible(p);
  REQUIRE(r.feasible);
  CHECK(exactly_equal(a * r.witness, v));
  CHECK(p.satisfied_by(r.witness));
}

TEST_CASE("epigraph minimum of max(|a-1|,|b-1|,|a+b|/2) is exactly 1/2") {
  std::vector<AffineTerm> terms;
  terms.push_back({rat_vec({1, 0}), rat(-1)});
  terms.push_back({rat_vec({0, 1}), rat(-1)});
  terms.push_back({rat_vec({rat(1, 2), rat(1, 2)}), rat(0)});
  CHECK(minimize_linear_over_max(terms, 2) == rat(1, 2));
}

TEST_CASE("dropping the mixed term lets the minimum collapse to 0") {
  std::vector<AffineTerm> terms;
  terms.push_back({rat_vec({1, 0}), rat(-1)});
  terms.push_back({rat_vec({0, 1}), rat(-1)});
  CHECK(minimize_linear_over_max(terms, 2) == 0);
}

TEST_CASE("single |a| has minimum 0 and the symmetric pair has minimum 1") {
  std::vector<AffineTerm> zero_term;
  zero_term.push_back({rat_vec({1}), rat(0)});
  CHECK(minimize_linear_over_max(zero_term, 1) == 0);

  std::vector<AffineTerm> pair;
  pair.push_back({rat_vec({1}), rat(-1)});
  pair.push_back({rat_vec({1}), rat(1)});
  CHECK(minimize_linear_over_max(pair, 1) == 1);
}

TEST_CASE("no terms is a precondition violation") {
  CHECK_THROWS_AS(minimize_linear_over_max({}, 1), PreconditionViolated);
}

TEST_CASE("optimization returns exact optimum with a verified dual bound") {
  // minimize -z1 - z2 over the midpoint constraint set: optimum at z=(1,0) or
  // (0,1)... the constraint pins z1+z2 = 1, so the optimum is -1.
  RatVec cost = rat_vec({-1, -1});
  const auto r = lp_minimize(cost, midpoint_problem());
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == rat(-1));
  REQUIRE(r.optimality.has_value());
  CHECK(dual_bound_valid(midpoint_problem(), cost, *r.optimality));
}

TEST_CASE("unbounded LP reports a checkable ray") {
  RatMat a(1, 2);
  a << 1, -1;
  RatVec b(1);
  b << 0;
  FeasibilityProblem p;
  p.equalities = a;
  p.rhs = b;
  p.lower = {Rat(0), Rat(0)};
  p.upper = {std::nullopt, std::nullopt};
  const RatVec cost = rat_vec({-1, 0});
  const auto r = lp_minimize(cost, p);
  REQUIRE(r.status == LpStatus::Unbounded);
  CHECK(is_zero(RatVec(a * r.ray)));
  CHECK(cost.dot(r.ray) < 0);
}

TEST_CASE("inconsistent bounds short-circuit to infeasible") {
  RatMat a(0, 1);
  FeasibilityProblem p;
  p.equalities = a;
  p.rhs = RatVec(0);
  p.lower = {Rat(1)};
  p.upper = {Rat(0)};
  const auto r = lp_feasible(p);
  CHECK_FALSE(r.feasible);
  CHECK(r.inconsistent_bound == Index{0});
}

TEST_CASE("randomized feasible-by-construction problems always verify") {
  Rng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const Index m = static_cast<Index>(rng.int_in(1, 4));
    const Index n = static_cast<Index>(rng.int_in(1, 5));
    const RatMat a = rng.mat(m, n);
    RatVec x0(n), lo(n), hi(n);
    for (Index j = 0; j < n; ++j) {
      lo(j) = rng.rat_in(2);
      hi(j) = lo(j) + rng.nonneg_rat(3);
      // interior-ish point
      x0(j) = (lo(j) + hi(j)) / 2;
    }
    const auto p = FeasibilityProblem::boxed(a, RatVec(a * x0), lo, hi);
    const auto r = lp_feasible(p);
    REQUIRE(r.feasible);
    CHECK(p.satisfied_by(r.witness));
  }
}

TEST_CASE("randomized infeasible problems carry valid Farkas certificates") {
  Rng rng(77);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = static_cast<Index>(rng.int_in(1, 3));
    const Index n = static_cast<Index>(rng.int_in(1, 4));
    const RatMat a = rng.mat(m, n);
    RatVec lo(n), hi(n);
    for (Index j = 0; j < n; ++j) {
      lo(j) = rng.rat_in(2);
      hi(j) = lo(j) + rng.nonneg_rat(2);
    }
    const RatVec b = rng.vec(m, 9, 2);
    const auto p = FeasibilityProblem::boxed(a, b, lo, hi);
    const auto r = lp_feasible(p);
    if (r.feasible) {
      CHECK(p.satisfied_by(r.witness));
    } else {
      ++infeasible_seen;
      REQUIRE(r.certificate.has_value());
      CHECK(farkas_valid(p, *r.certificate));
    }
  }
  CHECK(infeasible_seen > 20);
}

TEST_CASE("determinism: identical input gives identical witness") {
  const auto r1 = lp_feasible(midpoint_problem());
  const auto r2 = lp_feasible(midpoint_problem());
  REQUIRE(r1.feasible);
  REQUIRE(r2.feasible);
  CHECK(exactly_equal(r1.witness, r2.witness));
}

TEST_CASE("box_vertices enumerates supports") {
  SUBCASE("one-dimensional support") {
    const auto vs = box_vertices(rat_vec({1, 0}), 16);
    REQUIRE(vs.size() == 2);
    CHECK(exactly_equal(vs[0], rat_vec({0, 0})));
    CHECK(exactly_equal(vs[1], rat_vec({1, 0})));
  }
  SUBCASE("rectangle") {
    const auto vs = box_vertices(rat_vec({1, 2}), 16);
    REQUIRE(vs.size() == 4);
    CHECK(exactly_equal(vs[3], rat_vec({1, 2})));
  }
  SUBCASE("cap exceeded") {
    CHECK_THROWS_AS(box_vertices(rat_vec({1, 1, 1}), 4), SupportTooLarge);
  }
  SUBCASE("vertices are distinct and inside the box") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const RatVec c = rng.nonneg_vec(static_cast<Index>(rng.int_in(1, 5)));
      Index support = 0;
      for (Index i = 0; i < c.size(); ++i) support += c(i) > 0 ? 1 : 0;
      const auto vs = box_vertices(c, 1u << 10);
      CHECK(vs.size() == (std::size_t{1} << support));
      for (std::size_t i = 0; i < vs.size(); ++i) {
        CHECK(is_nonnegative(vs[i]));
        CHECK(leq(vs[i], c));
        for (std::size_t k = i + 1; k < vs.size(); ++k)
          CHECK_FALSE(exactly_equal(vs[i], vs[k]));
      }
    }
  }
}
