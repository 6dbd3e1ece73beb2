#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "latlim/lattice.hpp"
#include "latlim/maps.hpp"
#include "latlim/rng.hpp"

using namespace latlim;

namespace {

RatMat mat(Index rows, Index cols, std::vector<Rat> entries) {
  RatMat m(rows, cols);
  Index k = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = entries[static_cast<std::size_t>(k++)];
  return m;
}

LatticeMap phi21_truncated() {
  return LatticeMap::from_matrix(mat(3, 4,
                                     {rat(1, 2), rat(1, 2), rat(0), rat(0),
                                      rat(0), rat(0), rat(1), rat(0),
                                      rat(0), rat(0), rat(0), rat(1)}));
}

/// All matrices of the given shape with entries in {0, 1/2, 1}.
template <typename F>
void sweep_half_grid(Index rows, Index cols, F&& f) {
  const Index cells = rows * cols;
  std::vector<int> digits(static_cast<std::size_t>(cells), 0);
  const Rat values[3] = {rat(0), rat(1, 2), rat(1)};
  while (true) {
    RatMat m(rows, cols);
    for (Index k = 0; k < cells; ++k)
      m(k / cols, k % cols) = values[digits[static_cast<std::size_t>(k)]];
    f(std::move(m));
    Index k = 0;
    while (k < cells && ++digits[static_cast<std::size_t>(k)] == 3) {
      digits[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == cells) break;
  }
}

}  // namespace

TEST_CASE("is_positive") {
  CHECK(is_positive(LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(0), rat(1)})))
            .holds);
  const auto v =
      is_positive(LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(-1), rat(0), rat(1)})));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == "negative-entry");
  const auto avg = is_positive(LatticeMap::averaging(1, 2, SpaceTag::make_lp(1)));
  CHECK(avg.holds);
  CHECK(avg.method == Method::Structural);
}

TEST_CASE("is_lattice_hom on matrices") {
  SUBCASE("truncated averaging map fails with the |Tx| vs T|x| witness") {
    const auto v = is_lattice_hom(phi21_truncated());
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    const auto& elems = v.witness->elements;
    REQUIRE(elems.size() == 3);
    CHECK(exactly_equal(std::get<RatVec>(elems[0].second), rat_vec({1, -1, 0, 0})));
    CHECK(exactly_equal(std::get<RatVec>(elems[1].second), rat_vec({0, 0, 0})));
    CHECK(exactly_equal(std::get<RatVec>(elems[2].second), rat_vec({1, 0, 0})));
  }
  SUBCASE("diagonal maps are homs") {
    CHECK(is_lattice_hom(LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(0), rat(2)})))
              .holds);
  }
  SUBCASE("row sum map fails") {
    const auto v = is_lattice_hom(LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(1)})));
    REQUIRE_FALSE(v.holds);
    CHECK(exactly_equal(std::get<RatVec>(v.witness->elements[0].second), rat_vec({1, -1})));
  }
}

TEST_CASE("is_interval_preserving on matrices") {
  CHECK(is_interval_preserving(phi21_truncated()).holds);
  CHECK(is_interval_preserving(phi21_truncated()).method == Method::LpExact);
  SUBCASE("duplicated row fails with a vertex witness") {
    const auto v = is_interval_preserving(
        LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(1), rat(0)})));
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == "box-vertex-escape");
    CHECK(exactly_equal(std::get<RatVec>(v.witness->elements[0].second), rat_vec({1, 0})));
    CHECK(exactly_equal(std::get<RatVec>(v.witness->elements[1].second), rat_vec({1, 0})));
  }
  CHECK(is_interval_preserving(
            LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(0), rat(1)})))
            .holds);
}

TEST_CASE("AIP equals IP for matrices, with the finite-dimensional note") {
  for (const auto& m : {phi21_truncated(),
                        LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(1), rat(0)}))}) {
    const auto aip = is_almost_interval_preserving(m);
    const auto ip = is_interval_preserving(m);
    CHECK(aip.holds == ip.holds);
    bool noted = false;
    for (const auto& n : aip.notes) noted = noted || n.find("finite-dimensional") != std::string::npos;
    CHECK(noted);
  }
}

TEST_CASE("adjoint") {
  const auto t = LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(2), rat(0), rat(1)}));
  CHECK(exactly_equal(adjoint(t).matrix, mat(2, 2, {rat(1), rat(0), rat(2), rat(1)})));
  const auto d = LatticeMap::from_matrix(mat(2, 2, {rat(3), rat(0), rat(0), rat(5)}));
  CHECK(exactly_equal(adjoint(d).matrix, d.matrix));
  CHECK(exactly_equal(adjoint(adjoint(t)).matrix, t.matrix));
  CHECK_THROWS_AS(adjoint(LatticeMap::averaging(1, 2, SpaceTag::make_lp(1))), NotMatrixKind);
}

TEST_CASE("duality on the worked examples") {
  SUBCASE("diag(1,2)") {
    const auto rep =
        check_duality(LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(0), rat(0), rat(2)})));
    CHECK(rep.consistent);
    CHECK(rep.hom.holds);
    CHECK(rep.adjoint_ip.holds);
  }
  SUBCASE("truncated averaging map") {
    const auto rep = check_duality(phi21_truncated());
    CHECK(rep.consistent);
    CHECK_FALSE(rep.hom.holds);
    CHECK_FALSE(rep.adjoint_ip.holds);
    CHECK(rep.ip.holds);
    CHECK(rep.adjoint_hom.holds);
  }
  SUBCASE("[[1,1],[0,0]]") {
    const auto rep = check_duality(
        LatticeMap::from_matrix(mat(2, 2, {rat(1), rat(1), rat(0), rat(0)})));
    CHECK(rep.consistent);
    CHECK_FALSE(rep.hom.holds);
    CHECK_FALSE(rep.adjoint_ip.holds);
  }
}

TEST_CASE("exhaustive 2x2 sweep over {0,1/2,1}: duality, oracle, hom-ideal, injectivity") {
  const RatVec ones = rat_vec({1, 1});
  sweep_half_grid(2, 2, [&](RatMat m) {
    const LatticeMap t = LatticeMap::from_matrix(m);
    const auto rep = check_duality(t);
    CHECK(rep.consistent);
    // IP checker vs definitional vertex oracle at a strictly positive point.
    CHECK(rep.ip.holds == ip_definitional_oracle(m, ones, 1u << 10).holds);
    // Hom implies: IP verdict == image-is-ideal verdict.
    if (rep.hom.holds) {
      std::vector<RatVec> image;
      for (Index c = 0; c < m.cols(); ++c) image.push_back(m.col(c));
      CHECK(rep.ip.holds == is_ideal(m.rows(), image).holds);
    }
    // Injective IP maps are lattice homomorphisms.
    if (rep.ip.holds && rank(m) == m.cols()) CHECK(rep.hom.holds);
    // Structural hom test vs definitional oracle.
    CheckConfig cfg;
    cfg.samples = 12;
    CHECK(rep.hom.holds == hom_definitional_oracle(m, cfg).holds);
  });
}

TEST_CASE("compose") {
  SUBCASE("averaging truncations compose: phi_32 o phi_21 = phi_31") {
    const auto p21 = LatticeMap::averaging(1, 2, SpaceTag::make_lp(1));
    const auto p32 = LatticeMap::averaging(2, 3, SpaceTag::make_lp(1));
    const auto p31 = LatticeMap::averaging(1, 3, SpaceTag::make_lp(1));
    const auto eq = maps_equal(compose(p32, p21), p31);
    REQUIRE(eq.has_value());
    CHECK(*eq);
  }
  SUBCASE("identity is neutral") {
    const auto t = phi21_truncated();
    const auto id = LatticeMap::from_matrix(RatMat(RatMat::Identity(3, 3)));
    CHECK(exactly_equal(compose(id, t).matrix, t.matrix));
  }
  SUBCASE("products of IP matrices are IP (seeded)") {
    Rng rng(404);
    for (int n = 0; n < 40; ++n) {
      const RatMat a = rng.column_singleton_mat(3, 3);
      const RatMat b = rng.column_singleton_mat(3, 3);
      const auto prod = compose(LatticeMap::from_matrix(a), LatticeMap::from_matrix(b));
      CHECK(is_interval_preserving(prod).holds);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(compose(phi21_truncated(), phi21_truncated()), DimensionMismatch);
  }
}

TEST_CASE("sequence maps: averaging is sampled-IP and exactly not a hom") {
  const auto avg = LatticeMap::averaging(1, 2, SpaceTag::make_lp(1));
  const auto ip = is_interval_preserving(avg);
  CHECK(ip.holds);
  CHECK(ip.method == Method::Sampled);
  CHECK_FALSE(ip.conclusive);  // inconclusive-positive per design

  const auto hom = is_lattice_hom(avg);
  REQUIRE_FALSE(hom.holds);
  CHECK(hom.conclusive);
  REQUIRE(hom.witness.has_value());
  const EPSeq& x = std::get<EPSeq>(hom.witness->elements[0].second);
  CHECK(avg.apply_seq(ep_abs(x)) != ep_abs(avg.apply_seq(x)));
}

TEST_CASE("inclusion of the constant-tail sublattice into c") {
  const auto inc = LatticeMap::inclusion(SpaceDesc::c_tail(1), SpaceDesc::seq({SpaceTag::c, 0}));
  CHECK(is_lattice_hom(inc).holds);
  CHECK(is_positive(inc).holds);

  SUBCASE("interval preservation fails conclusively") {
    const auto ip = is_interval_preserving(inc);
    REQUIRE_FALSE(ip.holds);
    CHECK(ip.conclusive);
  }

  SUBCASE("AIP fails with the 1/4 separation certificate") {
    const auto aip = is_almost_interval_preserving(inc);
    REQUIRE_FALSE(aip.holds);
    REQUIRE(aip.witness.has_value());
    CHECK(aip.witness->kind == "separation");
    REQUIRE_FALSE(aip.witness->values.empty());
    CHECK(aip.witness->values[0].second == rat(1, 4));

    SeparationCertificate cert;
    cert.x = EPSeq::constant(1);
    cert.y = EPSeq({rat(1, 2)}, {Rat(1)});
    cert.window = 4;
    cert.bound = rat(1, 4);
    CHECK(verify_separation(inc, cert));
    CHECK(window_distance(inc, cert.x, cert.y, 4) == rat(1, 4));
    // an inflated bound must not verify
    cert.bound = rat(1, 3);
    CHECK_FALSE(verify_separation(inc, cert));
  }
}

TEST_CASE("pushdown squares") {
  SUBCASE("identity over a coordinate quotient") {
    CommSquare sq;
    sq.top = LatticeMap::from_matrix(RatMat(RatMat::Identity(2, 2)));
    sq.left = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(0)}));
    sq.right = sq.left;
    sq.bottom = LatticeMap::from_matrix(RatMat(RatMat::Identity(1, 1)));
    const auto rep = verify_pushdown_square(sq, MapProperty::IP);
    CHECK(rep.all_pass());
  }
  SUBCASE("hypothesis gate: right map not a lattice hom") {
    CommSquare sq;
    sq.top = LatticeMap::from_matrix(RatMat(RatMat::Identity(2, 2)));
    sq.left = LatticeMap::from_matrix(RatMat(RatMat::Identity(2, 2)));
    sq.right = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(1)}));
    sq.bottom = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(1)}));
    const auto rep = verify_pushdown_square(sq, MapProperty::IP);
    CHECK_FALSE(rep.all_pass());
    bool noted = false;
    for (const auto& n : rep.notes) noted = noted || n.find("not claimed") != std::string::npos;
    CHECK(noted);
  }
  SUBCASE("non-commuting square throws") {
    CommSquare sq;
    sq.top = LatticeMap::from_matrix(RatMat(RatMat::Identity(2, 2)));
    sq.left = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(0)}));
    sq.right = LatticeMap::from_matrix(mat(1, 2, {rat(0), rat(1)}));
    sq.bottom = LatticeMap::from_matrix(RatMat(RatMat::Identity(1, 1)));
    CHECK_THROWS_AS(verify_pushdown_square(sq, MapProperty::IP), SquareNotCommuting);
  }
  SUBCASE("seeded instances satisfy the implication") {
    Rng rng(2025);
    for (int n = 0; n < 25; ++n) {
      const auto sq = testgen::pushdown_instance(rng);
      CHECK(verify_pushdown_square(sq, MapProperty::IP).all_pass());
      CHECK(verify_pushdown_square(sq, MapProperty::AIP).all_pass());
    }
  }
}

TEST_CASE("factoring harness") {
  SUBCASE("coordinate legs with the sum map") {
    std::vector<LatticeMap> legs = {LatticeMap::from_matrix(mat(2, 1, {rat(1), rat(0)})),
                                    LatticeMap::from_matrix(mat(2, 1, {rat(0), rat(1)}))};
    const auto chi = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(1)}));
    const auto rep = verify_factoring(legs, chi, MapProperty::IP);
    // every conclusive item passes; the sampled union hypothesis may fail for
    // axis legs and is reported as such
    for (const auto& it : rep.items)
      if (it.conclusive) CHECK(it.pass);
  }
  SUBCASE("negative entry fails on both sides consistently") {
    std::vector<LatticeMap> legs = {LatticeMap::from_matrix(RatMat(RatMat::Identity(2, 2)))};
    const auto chi = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(-1)}));
    const auto rep = verify_factoring(legs, chi, MapProperty::IP);
    bool equivalence = false;
    for (const auto& it : rep.items)
      if (it.name.rfind("equivalence", 0) == 0) equivalence = it.pass;
    CHECK(equivalence);
  }
  SUBCASE("seeded instances keep the equivalence") {
    Rng rng(31337);
    for (int n = 0; n < 25; ++n) {
      const auto inst = testgen::factoring_instance(rng);
      const auto rep = verify_factoring(inst.legs, inst.chi, MapProperty::IP);
      bool equivalence = false;
      for (const auto& it : rep.items)
        if (it.name.rfind("equivalence", 0) == 0) equivalence = it.pass;
      CHECK(equivalence);
    }
  }
}

TEST_CASE("contractivity") {
  CHECK(is_contractive(LatticeMap::averaging(1, 3, SpaceTag::make_lp(1))).holds);
  const auto half = LatticeMap::from_matrix(mat(2, 2, {rat(1, 2), rat(1, 2), rat(0), rat(1)}));
  CHECK(is_contractive(half).holds);
  const auto big = LatticeMap::from_matrix(mat(1, 2, {rat(1), rat(1)}));
  CHECK_FALSE(is_contractive(big).holds);  // row sum 2 in the sup norm
}
