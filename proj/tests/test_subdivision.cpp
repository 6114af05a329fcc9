#include "doctest.h"
#include "fixtures.hpp"

using namespace rkdual;

namespace {

std::size_t pair_count(const KSpace& ks) {
  std::size_t n = 0;
  for (SimplexId t = 0; t < ks.X.size(); ++t)
    for (SimplexId s = 0; s < ks.K.size(); ++s)
      if (ks.K.is_face(s, ks.pi.image(t))) ++n;
  return n;
}

std::map<int, std::size_t> census(const KSpace& ks) {
  return verify_ball_complex(ball_complex(ks)).census;
}

}  // namespace

TEST_SUITE("subdivision-geometry") {
  TEST_CASE("cell censuses") {
    CHECK(census(fixtures::edge()) == std::map<int, std::size_t>{{0, 3}, {1, 2}});
    CHECK(census(fixtures::id2()) == std::map<int, std::size_t>{{0, 7}, {1, 9}, {2, 3}});
    CHECK(census(fixtures::hex()) == std::map<int, std::size_t>{{0, 12}, {1, 12}});
    CHECK(census(fixtures::pt()) == std::map<int, std::size_t>{{0, 1}});
    for (const auto& [name, ks] : fixtures::corpus()) CHECK(ball_complex(ks).cells.size() == pair_count(ks));
  }

  TEST_CASE("cell dimension and the interior partition") {
    auto check = [](const KSpace& ks) {
      const BallComplex bc = ball_complex(ks);
      for (const auto& cell : bc.cells) CHECK(cell.dimension == ks.X.dim(cell.key.T) - ks.K.dim(cell.key.sigma));
      // Q = <S0,...,Sp> is interior to exactly the cell (S0, pi(Sp)).
      for (ChainId q = 0; q < bc.xp.size(); ++q) {
        const auto& chain = bc.xp.chain(q);
        std::vector<CellKey> owners;
        for (const auto& cell : bc.cells) {
          auto in = [&](const std::vector<ChainId>& v) { return std::binary_search(v.begin(), v.end(), q); };
          if (in(cell.simplices) && !in(cell.inner_boundary) && !in(cell.outer_boundary)) owners.push_back(cell.key);
        }
        REQUIRE(owners.size() == 1);
        CHECK(owners[0].T == chain.front());
        CHECK(owners[0].sigma == ks.pi.image(chain.back()));
      }
      const BallReport r = verify_ball_complex(bc);
      CHECK(r.passed());
      CHECK(r.euler_cells == ks.X.euler_characteristic());
      CHECK(r.euler_derived == ks.X.euler_characteristic());
    };
    for (const auto& [name, ks] : fixtures::corpus()) {
      INFO(name);
      check(ks);
    }
    for (const auto& ks : fixtures::random_kspaces(21, 30)) check(ks);
  }

  TEST_CASE("dual cells of K") {
    const auto k = SimplicialComplex::full_simplex({"a", "b"});
    const DerivedComplex kp = barycentric_subdivision(k);
    CHECK(dual_cone(kp, 0).size() == 3);  // <a>, <ab>, <ab,a>
    CHECK(dual_cone(kp, 2).size() == 1);
    CHECK(dual_cell(kp, 0, 0).size() == 1);
    CHECK(dual_cell(kp, 0, 2).size() == 3);
  }

  TEST_CASE("edge boundary display") {
    const KSpace e = fixtures::edge();
    const BallComplex bc = ball_complex(e);
    const CellularComplex c = cellular_chain_complex(e, OrientationPair::canonical(e), Ring::integers());
    CHECK(check_boundary_display(c, bc).empty());
    CHECK(emit_cells(e, Ring::integers()) ==
          "(a|a) 0\n(b|b) 0\n(a,b|a,b) 0\n(a,b|a) 1 +1:(a|a) -1:(a,b|a,b)\n(a,b|b) 1 -1:(b|b) +1:(a,b|a,b)\n");
    CHECK(emit_cells(fixtures::pt(), Ring::integers()) == "(p|p) 0\n");
  }

  TEST_CASE("display formula on the corpus and random spaces") {
    for (const auto& [name, ks] : fixtures::corpus()) {
      INFO(name);
      const CellularComplex c = cellular_chain_complex(ks, OrientationPair::canonical(ks), Ring::integers());
      CHECK(check_boundary_display(c, ball_complex(ks)).empty());
    }
    for (const auto& ks : fixtures::random_kspaces(8, 30)) {
      const CellularComplex c = cellular_chain_complex(ks, OrientationPair::canonical(ks), Ring::integers());
      CHECK(check_boundary_display(c, ball_complex(ks)).empty());
    }
  }

  TEST_CASE("orientation pairs") {
    const KSpace hex = fixtures::hex();
    OrientationPair o = OrientationPair::canonical(hex);
    CHECK_FALSE(orientation_defect(hex, o).has_value());
    const SimplexId edge = hex.X.of_dim(1).front();
    o.x_sign[edge] = -o.x_sign[edge];
    CHECK(orientation_defect(hex, o).has_value());
    CHECK_THROWS_AS(cellular_chain_complex(hex, o, Ring::integers()), InvalidOrientation);

    std::vector<int> k_sign(hex.K.size(), 1);
    k_sign[3] = -1;
    k_sign[1] = -1;
    const OrientationPair other = OrientationPair::adjusted(hex, k_sign);
    CHECK_FALSE(orientation_defect(hex, other).has_value());
    const RKMap p = phi(hex, other, Ring::integers());
    CHECK(is_chain_map(p));
    CHECK(is_chain_map(c_x_map(hex, other, Ring::integers())));
    CHECK(verify_fundamental_cycles(hex, other, Ring::integers()).passed());
  }

  TEST_CASE("phi is a chain isomorphism onto the cellular complex") {
    for (const auto& [name, ks] : fixtures::corpus()) {
      INFO(name);
      const RKMap p = phi(ks, OrientationPair::canonical(ks), Ring::integers());
      CHECK(is_chain_map(p));
      for (int q = p.source().min_degree(); q <= p.source().max_degree(); ++q) {
        const Matrix m = p.component(q);
        CHECK(m.rows() == m.cols());
        CHECK(m.nonzeros() == m.rows());
        CHECK(rank(m, Ring::mod(2)) == m.rows());
      }
    }
  }

  TEST_CASE("homology of T Delta* X is the homology of X") {
    using H = std::map<int, HomologyGroup>;
    auto nonzero = [](const H& h) {
      H out;
      for (const auto& [q, g] : h)
        if (!g.is_zero()) out.emplace(q, g);
      return out;
    };
    const H circle_h = {{0, {1, {}}}, {1, {1, {}}}};
    const H point_h = {{0, {1, {}}}};
    auto t_homology = [&](const KSpace& ks) {
      return nonzero(homology(duality(delta_complexes(ks, Ring::integers()).codelta).complex.underlying()));
    };
    CHECK(t_homology(fixtures::hex()) == circle_h);
    CHECK(t_homology(fixtures::circ3()) == circle_h);
    CHECK(t_homology(fixtures::id2()) == point_h);
    for (const auto& ks : fixtures::random_kspaces(9, 40))
      CHECK(t_homology(ks) == nonzero(homology(chain_complex(ks.X, Ring::integers()))));
  }

  TEST_CASE("naturality for the hexagon wrapping the circle") {
    const KSpace hex = fixtures::hex(), circ = fixtures::circ3();
    const KSpaceMap f = validate_kspace_map(hex, circ, hex.pi);
    const NaturalityReport r = check_naturality(f, Ring::integers());
    CHECK(r.square);
    CHECK(r.blocks);
    CHECK(r.cells_to_cells);
    for (const auto& [name, ks] : fixtures::corpus()) {
      INFO(name);
      CHECK(check_naturality(validate_kspace_map(ks, ks, SimplicialMap::identity(ks.X)), Ring::integers()).passed());
    }
    const RKMap fk = induced_ball_map(f, OrientationPair::canonical(hex), OrientationPair::canonical(circ), Ring::integers());
    CHECK(is_chain_map(fk));
    const Matrix one = fk.component(1);
    for (std::size_t col = 0; col < one.cols(); ++col) {
      std::size_t hits = 0;
      for (std::size_t row = 0; row < one.rows(); ++row)
        if (one.at(row, col) != 0) {
          ++hits;
          CHECK(abs(one.at(row, col)) == 1);
        }
      CHECK(hits == 1);
    }
  }

  TEST_CASE("maps of K-spaces must commute with the control maps") {
    const KSpace hex = fixtures::hex();
    auto shifted = fixtures::hex_assignment();
    shifted["x0"] = "b";
    shifted["x1"] = "c";
    shifted["x2"] = "a";
    shifted["x3"] = "b";
    shifted["x4"] = "c";
    shifted["x5"] = "a";
    const SimplicialMap rot = SimplicialMap::from_names(hex.X, hex.K, shifted);
    CHECK_THROWS_AS(validate_kspace_map(hex, fixtures::circ3(), rot), Error);
  }
}
