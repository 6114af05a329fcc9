#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

using namespace rkdual;

namespace {

int inversion_parity(const std::vector<std::uint32_t>& s) {
  int inv = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_SUITE("simplicial") {
  TEST_CASE("closure and numbering") {
    const auto k = SimplicialComplex::full_simplex({"c", "a", "b"});
    CHECK(k.size() == 7);
    CHECK(k.dimension() == 2);
    CHECK(k.name(0) == "{a}");
    CHECK(k.name(6) == "{a,b,c}");
    CHECK(k.star(0).size() == 4);
    CHECK(k.closure(6).size() == 7);
    CHECK(k.is_face(0, 6));
    CHECK_FALSE(k.is_face(6, 0));
    CHECK(k.euler_characteristic() == 1);
    CHECK(fixtures::circle().euler_characteristic() == 0);
  }

  TEST_CASE("permutation sign against inversion count") {
    std::vector<std::uint32_t> s = {0, 1, 2, 3, 4};
    do {
      CHECK(permutation_sign(s) == inversion_parity(s));
    } while (std::next_permutation(s.begin(), s.end()));
  }

  TEST_CASE("incidence numbers") {
    const auto k = SimplicialComplex::full_simplex({"a", "b", "c"});
    const auto abc = OrientedSimplex::from_vertices(k, {"a", "b", "c"});
    CHECK(incidence_number(abc, OrientedSimplex::from_vertices(k, {"b", "c"})) == 1);
    CHECK(incidence_number(abc, OrientedSimplex::from_vertices(k, {"a", "c"})) == -1);
    CHECK(incidence_number(abc, OrientedSimplex::from_vertices(k, {"c", "a"})) == 1);
    CHECK(incidence_number(abc, OrientedSimplex::from_vertices(k, {"a", "b"})) == 1);
    CHECK(incidence_number(OrientedSimplex::from_vertices(k, {"b", "a", "c"}),
                           OrientedSimplex::from_vertices(k, {"a", "b"})) == -1);
    CHECK(incidence_number(abc, OrientedSimplex::from_vertices(k, {"a"})) == 0);
    const auto other = SimplicialComplex::full_simplex({"a", "b"});
    CHECK_THROWS_AS(incidence_number(abc, OrientedSimplex::from_vertices(other, {"a", "b"})), Error);
  }

  TEST_CASE("chain complexes square to zero") {
    for (const auto& ks : fixtures::random_kspaces(3, 100)) {
      CHECK_FALSE(chain_complex(ks.X, Ring::integers()).first_nonzero_square().has_value());
      std::vector<int> flip(ks.X.size(), 1);
      for (std::size_t i = 0; i < flip.size(); i += 2) flip[i] = -1;
      CHECK_FALSE(chain_complex(ks.X, Ring::integers(), flip).first_nonzero_square().has_value());
    }
  }

  TEST_CASE("barycentric subdivision of a triangle") {
    const DerivedComplex d = barycentric_subdivision(SimplicialComplex::full_simplex({"a", "b", "c"}));
    CHECK(d.of_dim(0).size() == 7);
    CHECK(d.of_dim(1).size() == 12);
    CHECK(d.of_dim(2).size() == 6);
    CHECK(d.euler_characteristic() == 1);
    CHECK_FALSE(d.chain_complex(Ring::integers()).first_nonzero_square().has_value());
    CHECK(d.prime().size() == d.size());
  }

  TEST_CASE("euler characteristic survives subdivision") {
    for (const auto& ks : fixtures::random_kspaces(5, 100))
      CHECK(barycentric_subdivision(ks.X).euler_characteristic() == ks.X.euler_characteristic());
  }

  TEST_CASE("kspace validation") {
    const KSpace hex = fixtures::hex();
    CHECK(hex.X.size() == 12);
    for (SimplexId s = 0; s < hex.X.size(); ++s) CHECK(hex.pi.is_nondegenerate(s));
    auto bad = fixtures::hex_assignment();
    bad["x1"] = "a";
    CHECK_NOTHROW(validate_kspace(fixtures::hexagon(), fixtures::circle(), bad));
    const auto two_points = SimplicialComplex::from_simplices({"a", "b"}, {});
    try {
      validate_kspace(SimplicialComplex::full_simplex({"u", "v"}), two_points, {{"u", "a"}, {"v", "b"}});
      FAIL("expected an error");
    } catch (const InvalidSimplicialMap& e) {
      CHECK(std::string(e.what()).find("{u,v}") != std::string::npos);
    }
    CHECK_THROWS_AS(validate_kspace(fixtures::hexagon(), fixtures::circle(), {{"x0", "a"}}), InvalidSimplicialMap);
  }

  TEST_CASE("push signs") {
    const KSpace t = fixtures::tri();
    const auto bc = t.X.find({*t.X.vertex("b"), *t.X.vertex("c")});
    const auto ac = t.X.find({*t.X.vertex("a"), *t.X.vertex("c")});
    CHECK(t.pi.push_sign(*bc) == 0);
    CHECK(t.pi.push_sign(*ac) == 1);
    const auto flip = validate_kspace(SimplicialComplex::full_simplex({"a", "b"}), SimplicialComplex::full_simplex({"a", "b"}),
                                      {{"a", "b"}, {"b", "a"}});
    CHECK(flip.pi.push_sign(2) == -1);
  }

  TEST_CASE("derived map is simplicial") {
    const KSpace hex = fixtures::hex();
    const DerivedComplex xp = barycentric_subdivision(hex.X), kp = barycentric_subdivision(hex.K);
    const SimplicialMap pp = derived_map(hex, xp, kp);
    CHECK(pp.source() == xp.prime());
    CHECK(pp.target() == kp.prime());
  }
}
