#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latlim/dirlimit.hpp"
#include "latlim/rng.hpp"

using namespace latlim;

namespace {

EPSeq seq(std::vector<long> prefix, std::vector<long> period) {
  std::vector<Rat> p, w;
  for (long v : prefix) p.push_back(rat(v));
  for (long v : period) w.push_back(rat(v));
  return EPSeq(std::move(p), std::move(w));
}

const SpaceTag l1_tag = SpaceTag::make_lp(1);
const SpaceTag linf_tag{SpaceTag::linf, 0};

}  // namespace

TEST_CASE("validate the averaging system") {
  const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
  const auto rep = validate_system(sys, 6);
  CHECK(rep.all_pass());
  // informative: the edges are not lattice homomorphisms
  bool informed = false;
  for (const auto& n : rep.notes)
    informed = informed || n.find("not a lattice homomorphism") != std::string::npos;
  CHECK(informed);
}

TEST_CASE("validate the coordinate inclusion chain in VL_IPLH") {
  const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_IPLH);
  const auto rep = validate_system(sys, 5);
  CHECK(rep.all_pass());
  CHECK(rep.all_conclusive());
}

TEST_CASE("cocycle violation is reported") {
  // phi_31 deliberately inconsistent with phi_32 o phi_21.
  std::map<std::pair<int, int>, RatMat> edges;
  RatMat two(1, 1), one(1, 1), bad(1, 1);
  two << 2;
  one << 1;
  bad << 5;
  edges[{1, 2}] = one;
  edges[{2, 3}] = two;
  edges[{1, 3}] = bad;
  const auto sys = DirectSystem::explicit_poset(
      3, {SpaceDesc::findim(1), SpaceDesc::findim(1), SpaceDesc::findim(1)}, edges,
      CategoryTag::VL_LH);
  const auto rep = validate_system(sys, 3);
  CHECK_FALSE(rep.all_pass());
  bool cocycle_failed = false;
  for (const auto& it : rep.items)
    if (it.name.find("cocycle") != std::string::npos) cocycle_failed = !it.pass;
  CHECK(cocycle_failed);
}

TEST_CASE("non-directed posets are rejected") {
  const auto sys = DirectSystem::explicit_poset(
      2, {SpaceDesc::findim(1), SpaceDesc::findim(1)}, {}, CategoryTag::VL_LH);
  const auto rep = validate_system(sys, 2);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("colimit element equality in the averaging system") {
  static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
  SUBCASE("the worked pair agrees at k = 2") {
    const ColimitElement a{&sys, 1, Element(seq({1, 1}, {0}))};
    const ColimitElement b{&sys, 2, Element(seq({1}, {0}))};
    const auto v = elements_equal(a, b, EqualityMode::exact(8));
    CHECK(v.holds);
    CHECK(v.conclusive);
  }
  SUBCASE("compatibility: (i,x) equals (j, phi_ji x) for seeded samples") {
    Rng rng(17);
    for (int n = 0; n < 40; ++n) {
      std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, 5)));
      for (auto& q : prefix) q = rng.rat_in();
      const EPSeq x(std::move(prefix), {Rat(0)});
      const int i = static_cast<int>(rng.int_in(1, 4));
      const int j = i + static_cast<int>(rng.int_in(0, 3));
      const ColimitElement a{&sys, i, Element(x)};
      const ColimitElement b{&sys, j, Element(averaging_map(i, j, x))};
      CHECK(elements_equal(a, b, EqualityMode::exact(10)).holds);
    }
  }
  SUBCASE("support stabilization refutes equality definitively") {
    const ColimitElement a{&sys, 1, Element(seq({1}, {0}))};
    const ColimitElement zero{&sys, 1, Element(EPSeq::zero())};
    const auto v = elements_equal(a, zero, EqualityMode::exact(6));
    REQUIRE_FALSE(v.holds);
    CHECK(v.conclusive);
    bool cert = false;
    for (const auto& n : v.notes)
      cert = cert || n.find("support-stabilization") != std::string::npos;
    CHECK(cert);
  }
  SUBCASE("different systems are rejected") {
    const auto other = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const ColimitElement a{&sys, 1, Element(EPSeq::zero())};
    const ColimitElement b{&other, 1, Element(EPSeq::zero())};
    CHECK_THROWS_AS(elements_equal(a, b, EqualityMode::exact(3)), DifferentSystems);
  }
}

TEST_CASE("alternating class differs from zero: certified norm limit 1") {
  static const auto sys = DirectSystem::averaging_system(linf_tag, CategoryTag::BL_IP);
  const ColimitElement alt{&sys, 1, Element(seq({}, {1, -1}))};
  const ColimitElement zero{&sys, 1, Element(EPSeq::zero())};

  const NormBracket bracket = colimit_norm(alt, 8);
  REQUIRE(bracket.certified_limit.has_value());
  CHECK(*bracket.certified_limit == NormValue::exact(rat(1)));
  CHECK(bracket.certificate == "eventual-constancy");
  for (const auto& v : bracket.upper_sequence) CHECK(v == NormValue::exact(rat(1)));

  const auto v = elements_equal(alt, zero, EqualityMode::seminorm(8));
  REQUIRE_FALSE(v.holds);
  CHECK(v.conclusive);
}

TEST_CASE("colimit norm bracket for finitely supported input, p = 1") {
  static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::BL_IP);
  const ColimitElement x{&sys, 1, Element(seq({1, 1}, {0}))};
  const NormBracket b = colimit_norm(x, 6);
  REQUIRE(b.upper_sequence.size() >= 3);
  CHECK(b.upper_sequence[0] == NormValue::exact(rat(2)));
  CHECK(b.upper_sequence[1] == NormValue::exact(rat(1)));
  CHECK(b.upper_sequence[2] == NormValue::exact(rat(1)));
  REQUIRE(b.certified_limit.has_value());
  CHECK(*b.certified_limit == NormValue::exact(rat(1)));
  CHECK(b.certificate == "support-stabilization");
  CHECK(*b.certified_limit == ep_norm(xprime(1, seq({1, 1}, {0})), l1_tag));

  const ColimitElement zero{&sys, 1, Element(EPSeq::zero())};
  const NormBracket zb = colimit_norm(zero, 4);
  REQUIRE(zb.certified_limit.has_value());
  CHECK(*zb.certified_limit == NormValue::exact(rat(0)));
}

TEST_CASE("norm brackets are nonincreasing for contractive systems") {
  static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::BL_IP);
  Rng rng(23);
  for (int n = 0; n < 30; ++n) {
    std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, 6)));
    for (auto& q : prefix) q = rng.rat_in();
    const ColimitElement x{&sys, static_cast<int>(rng.int_in(1, 3)),
                           Element(EPSeq(std::move(prefix), {Rat(0)}))};
    const NormBracket b = colimit_norm(x, 6);
    for (std::size_t k = 1; k < b.upper_sequence.size(); ++k) {
      REQUIRE(b.upper_sequence[k].kind == NormValue::Exact);
      CHECK(b.upper_sequence[k - 1].value >= b.upper_sequence[k].value);
      if (b.certified_limit) CHECK(b.upper_sequence[k].value >= b.certified_limit->value);
    }
  }
}

TEST_CASE("non-contractive chains are rejected by the norm bracket") {
  RatMat doubling(1, 1);
  doubling << 2;
  const auto sys = DirectSystem::explicit_chain({1, 1}, {doubling}, CategoryTag::NL_LH);
  const ColimitElement x{&sys, 1, Element(rat_vec({1}))};
  CHECK_THROWS_AS(colimit_norm(x, 1), NotContractive);
}

TEST_CASE("colimit lattice operations") {
  SUBCASE("sup of axis classes in the inclusion chain") {
    static const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_IPLH);
    const ColimitElement a{&sys, 1, Element(rat_vec({1}))};
    const ColimitElement b{&sys, 2, Element(rat_vec({0, 1}))};
    const auto r = colimit_lattice_op(LatticeOp::Sup, a, b);
    CHECK(r.value.index == 2);
    CHECK(element_eq(r.value.rep, Element(rat_vec({1, 1}))));
    CHECK(r.notes.empty());  // lattice-hom edges: representative independent
  }
  SUBCASE("abs in the inclusion chain") {
    static const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_IPLH);
    const ColimitElement a{&sys, 2, Element(rat_vec({1, -1}))};
    const auto r = colimit_lattice_op(LatticeOp::Abs, a, a);
    CHECK(element_eq(r.value.rep, Element(rat_vec({1, 1}))));
  }
  SUBCASE("averaging system: representative-level annotation and a real discrepancy") {
    static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const ColimitElement a{&sys, 1, Element(seq({1, -1}, {0}))};
    const ColimitElement zero{&sys, 1, Element(EPSeq::zero())};
    const auto at1 = colimit_lattice_op(LatticeOp::Sup, a, zero);
    REQUIRE_FALSE(at1.notes.empty());
    // Push the index-1 sup to index 2; compare with the sup of the pushed
    // representatives at index 2: they differ, so the annotation is earned.
    const EPSeq pushed_sup = averaging_map(1, 2, std::get<EPSeq>(at1.value.rep));
    const EPSeq sup_pushed = ep_sup(averaging_map(1, 2, seq({1, -1}, {0})), EPSeq::zero());
    CHECK(pushed_sup != sup_pushed);
  }
  SUBCASE("representative independence for lattice-hom tags (seeded)") {
    static const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_LH);
    Rng rng(77);
    for (int n = 0; n < 50; ++n) {
      const int i = static_cast<int>(rng.int_in(1, 3));
      const int j = static_cast<int>(rng.int_in(1, 3));
      const ColimitElement a{&sys, i, Element(rng.vec(i))};
      const ColimitElement b{&sys, j, Element(rng.vec(j))};
      const auto direct = colimit_lattice_op(LatticeOp::Sup, a, b);
      // push both to a larger index first; the class must not change
      const int k = std::max(i, j) + static_cast<int>(rng.int_in(0, 2));
      const ColimitElement ak{&sys, k, sys.edge(i, k).apply(a.rep)};
      const ColimitElement bk{&sys, k, sys.edge(j, k).apply(b.rep)};
      const auto later = colimit_lattice_op(LatticeOp::Sup, ak, bk);
      CHECK(elements_equal(direct.value, later.value, EqualityMode::exact(k + 2)).holds);
    }
  }
}

TEST_CASE("factoring maps") {
  SUBCASE("inclusion chain factors through the embedding cone") {
    static const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_IPLH);
    const auto f = build_factoring_map(sys, Cone::embed_model(SpaceTag{SpaceTag::c00, 0}), 5);
    const ColimitElement e2{&sys, 2, Element(rat_vec({0, 1}))};
    CHECK(element_eq(f.apply(e2), Element(EPSeq::unit(1))));
  }
  SUBCASE("averaging cone is compatible and well-defined on equal classes") {
    static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const auto f = build_factoring_map(sys, Cone::averaging_model(l1_tag), 6);
    Rng rng(5);
    for (int n = 0; n < 100; ++n) {
      std::vector<Rat> prefix(static_cast<std::size_t>(rng.int_in(0, 5)));
      for (auto& q : prefix) q = rng.rat_in();
      const EPSeq x(std::move(prefix), {Rat(0)});
      const int i = static_cast<int>(rng.int_in(1, 4));
      const int j = i + static_cast<int>(rng.int_in(0, 3));
      const ColimitElement a{&sys, i, Element(x)};
      const ColimitElement b{&sys, j, Element(averaging_map(i, j, x))};
      REQUIRE(elements_equal(a, b, EqualityMode::exact(10)).holds);
      CHECK(element_eq(f.apply(a), f.apply(b)));
    }
  }
  SUBCASE("incompatible cones are refused with the violating pair") {
    static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    // identity legs do not commute with the averaging edges
    Cone bad = Cone::inclusion_model(l1_tag);
    CHECK_THROWS_AS(build_factoring_map(sys, bad, 4), ConeIncompatible);
  }
}

TEST_CASE("degenerate limits") {
  SUBCASE("two-point chain with zero edge: the top object") {
    std::map<std::pair<int, int>, RatMat> edges;
    edges[{1, 2}] = RatMat::Zero(2, 1);
    const auto sys = DirectSystem::explicit_poset(
        2, {SpaceDesc::findim(1), SpaceDesc::findim(2)}, edges, CategoryTag::VL_IP);
    const auto lim = degenerate_limit(sys);
    CHECK_FALSE(lim.zero_limit);
    CHECK(lim.top_index == 2);
    CHECK(lim.object.dim == 2);
  }
  SUBCASE("zero-edge chain over the naturals: the zero space") {
    const auto sys = DirectSystem::zero_chain(SpaceDesc::findim(1), CategoryTag::VL_IP, 5);
    const auto lim = degenerate_limit(sys);
    CHECK(lim.zero_limit);
    CHECK(lim.object.dim == 0);
  }
  SUBCASE("nonzero edges are refused") {
    const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP, 4);
    CHECK_THROWS_AS(degenerate_limit(sys), EdgesNotZero);
  }
}

TEST_CASE("psi_i interval preserving iff the edges out of i vanish") {
  SUBCASE("averaging system: psi_1 is obstructed") {
    const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const auto rep = check_psi_ip_iff_zero(sys, 1, 3);
    bool equivalence = false;
    bool psi_ip = true, edges_zero = true;
    for (const auto& it : rep.items) {
      if (it.name == "equivalence") equivalence = it.pass;
      if (it.name.find("vanish") != std::string::npos) edges_zero = it.pass;
      if (it.name.find("truncated psi") != std::string::npos) psi_ip = it.pass;
    }
    CHECK(equivalence);
    CHECK_FALSE(psi_ip);
    CHECK_FALSE(edges_zero);
  }
  SUBCASE("zero-edge system: psi_i is interval preserving") {
    const auto sys = DirectSystem::zero_chain(SpaceDesc::findim(2), CategoryTag::VL_IP, 5);
    const auto rep = check_psi_ip_iff_zero(sys, 1, 3);
    CHECK(rep.all_pass());
  }
  SUBCASE("seeded random systems keep the equivalence") {
    Rng rng(909);
    for (int n = 0; n < 10; ++n) {
      std::vector<Index> dims;
      std::vector<RatMat> steps;
      const int len = static_cast<int>(rng.int_in(3, 5));
      dims.push_back(static_cast<Index>(rng.int_in(1, 3)));
      for (int k = 1; k < len; ++k) {
        dims.push_back(static_cast<Index>(rng.int_in(1, 3)));
        steps.push_back(rng.below(3) == 0 ? RatMat(RatMat::Zero(dims[k], dims[k - 1]))
                                          : rng.column_singleton_mat(dims[k], dims[k - 1]));
      }
      const auto sys = DirectSystem::explicit_chain(dims, steps, CategoryTag::VL_IP);
      const auto rep = check_psi_ip_iff_zero(sys, 1, len - 1);
      bool equivalence = false;
      for (const auto& it : rep.items)
        if (it.name == "equivalence") equivalence = it.pass;
      CHECK(equivalence);
    }
  }
}

TEST_CASE("structure of the limit on the model target") {
  SUBCASE("inclusion chain into the finitely-supported model: images are ideals") {
    static const auto sys = DirectSystem::coord_inclusion_system(CategoryTag::VL_IPLH);
    const auto rep = verify_structure(sys, Cone::embed_model(SpaceTag{SpaceTag::c00, 0}), 4);
    CHECK(rep.all_pass());
    bool ideals = false;
    for (const auto& it : rep.items)
      if (it.name.find("ideals") != std::string::npos) ideals = it.pass;
    CHECK(ideals);
  }
  SUBCASE("averaging system: images nested and coinciding") {
    static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const auto rep = verify_structure(sys, Cone::averaging_model(l1_tag), 5);
    CHECK(rep.all_pass());
    bool coincide = false;
    for (const auto& it : rep.items)
      if (it.name.find("coincide") != std::string::npos) coincide = it.pass;
    CHECK(coincide);
  }
  SUBCASE("a broken cone fails the nesting check") {
    static const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::NL_IP);
    const auto rep = verify_structure(sys, Cone::inclusion_model(l1_tag), 4);
    CHECK_FALSE(rep.all_pass());
  }
}

TEST_CASE("promotion of limits to stronger morphism classes") {
  SUBCASE("averaging legs promote to the interval preserving tag") {
    const auto sys = DirectSystem::averaging_system(l1_tag, CategoryTag::BL_IP);
    const auto v = promote_limit(sys, Cone::averaging_model(l1_tag), CategoryTag::NL_IP, 5);
    CHECK(v.holds);
    CHECK(v.method == Method::Sampled);
    CHECK_FALSE(v.conclusive);
  }
  SUBCASE("constant-tail inclusions do not promote to AIP") {
    const auto sys = DirectSystem::ctail_system(CategoryTag::BL_LH);
    Cone cone = Cone::inclusion_model(SpaceTag{SpaceTag::c, 0});
    const auto v = promote_limit(sys, cone, CategoryTag::NL_AIP, 3);
    REQUIRE_FALSE(v.holds);
    CHECK(v.conclusive);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == "separation");
  }
  SUBCASE("zero systems promote trivially") {
    const auto sys = DirectSystem::zero_chain(SpaceDesc::findim(2), CategoryTag::VL_IP, 4);
    Cone cone;
    cone.kind = Cone::Kind::ZeroLegs;
    cone.target = SpaceDesc::findim(2);
    CHECK(promote_limit(sys, cone, CategoryTag::VL_IP, 4).holds);
  }
}
