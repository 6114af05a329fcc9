#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace rkdual;

TEST_SUITE("properties") {
  TEST_CASE("differentials square to zero on random K-spaces") {
    for (const auto& ks : fixtures::random_kspaces(0, 100)) {
      const DeltaComplexes dc = delta_complexes(ks, Ring::integers());
      CHECK_FALSE(dc.delta.first_nonzero_square().has_value());
      CHECK_FALSE(dc.codelta.first_nonzero_square().has_value());
      CHECK_FALSE(dc.derived.first_nonzero_square().has_value());
      const CellularComplex c = cellular_chain_complex(ks, OrientationPair::canonical(ks), Ring::integers());
      CHECK_FALSE(c.complex().first_nonzero_square().has_value());
      const DualityResult t = duality(dc.codelta);
      CHECK_FALSE(t.complex.first_nonzero_square().has_value());
      CHECK_FALSE(duality(t.complex).complex.first_nonzero_square().has_value());
    }
  }

  TEST_CASE("tensor_K is the image of tensor_R under the projection") {
    for (const auto& ks : fixtures::random_kspaces(1, 40)) {
      const RKComplex d = delta_complex(ks, Ring::integers()), c = codelta_K(ks.K, Ring::integers());
      const TensorComplex r = tensor_R(d, c), k = tensor_K(d, c);
      const RKMap p = pi_projection(r, k);
      CHECK(is_chain_map(p));
      for (int q = k.complex.min_degree(); q <= k.complex.max_degree(); ++q)
        CHECK(rank(p.component(q), Ring::integers()) == k.complex.rank(q));
    }
  }

  TEST_CASE("phi, C_X and the equivalences on random K-spaces") {
    for (const auto& ks : fixtures::random_kspaces(2, 40)) {
      const OrientationPair o = OrientationPair::canonical(ks);
      CHECK(is_chain_map(phi(ks, o, Ring::integers())));
      CHECK(is_chain_map(c_x_map(ks, o, Ring::integers())));
      CHECK(verify_fundamental_cycles(ks, o, Ring::integers()).passed());
      CHECK(verify_equivalences(ks, Ring::integers()).passed());
      CHECK(verify_e_equivalence(delta_complexes(ks, Ring::integers()).codelta).passed());
    }
  }

  TEST_CASE("the cap identity holds on random simplicial complexes") {
    for (const auto& ks : fixtures::random_kspaces(6, 15)) CHECK(verify_cap_chain_map(ks.X, Ring::integers()).passed());
  }

  TEST_CASE("e is natural for pi^* on random K-spaces") {
    for (const auto& ks : fixtures::random_kspaces(12, 20)) {
      const KSpaceMap pi = validate_kspace_map(ks, KSpace::identity(ks.K), ks.pi);
      const RKMap f = dual_star(induced_delta_map(pi, OrientationPair::canonical(ks),
                                                  OrientationPair::canonical(pi.target), Ring::integers()));
      CHECK(maps_equal(compose(e_transform(f.target()), duality(duality(f))), compose(f, e_transform(f.source()))));
    }
  }

  TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a(30, 25), b(25, 40);
      for (int i = 0; i < 200; ++i) {
        a.set(rng() % 30, rng() % 25, static_cast<long>(rng() % 7) - 3);
        b.set(rng() % 25, rng() % 40, static_cast<long>(rng() % 7) - 3);
      }
      CHECK(multiply(a, b, Exec::serial) == multiply(a, b, Exec::parallel));
    }
    for (const auto& ks : fixtures::random_kspaces(4, 20)) {
      const RKComplex c = delta_complexes(ks, Ring::integers()).codelta;
      const auto s = verify_e_equivalence(c, Exec::serial), p = verify_e_equivalence(c, Exec::parallel);
      REQUIRE(s.entries.size() == p.entries.size());
      for (std::size_t i = 0; i < s.entries.size(); ++i) {
        CHECK(s.entries[i].sigma == p.entries[i].sigma);
        CHECK(s.entries[i].acyclic == p.entries[i].acyclic);
      }
      const BallComplex bc = ball_complex(ks);
      const BallReport bs = verify_ball_complex(bc, Exec::serial), bp = verify_ball_complex(bc, Exec::parallel);
      CHECK(bs.failures == bp.failures);
      CHECK(bs.census == bp.census);
      const auto es = verify_equivalences(ks, Ring::integers(), Exec::serial);
      const auto ep = verify_equivalences(ks, Ring::integers(), Exec::parallel);
      CHECK(es.dual.failures() == ep.dual.failures());
      CHECK(c.first_nonzero_square(Exec::serial) == c.first_nonzero_square(Exec::parallel));
    }
  }

  TEST_CASE("parallel loop rethrows the first failing index") {
    try {
      for_each_index(Exec::parallel, 50, [](std::size_t i) {
        if (i >= 7) throw Error("index " + std::to_string(i));
      });
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "index 7");
    }
  }
}
