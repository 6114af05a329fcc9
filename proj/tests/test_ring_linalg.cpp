#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace rkdual;

namespace {

Integer det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    const Integer term = a[0][j] * det(minor);
    out += (j % 2 == 0) ? term : Integer(-term);
  }
  return out;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

// d_k = gcd of the k x k minors; invariant factors are d_k / d_{k-1}.
std::vector<Integer> factors_by_minors(const Matrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) a[i][j] = m.at(r[i], c[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(det(a)).get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng() % 3 != 0) m.set(r, c, static_cast<long>(rng() % (2 * spread + 1)) - spread);
  return m;
}

}  // namespace

TEST_SUITE("ring-linalg") {
  TEST_CASE("ring parsing and units") {
    CHECK(Ring::parse("Z") == Ring::integers());
    CHECK(Ring::parse("Z/7") == Ring::mod(7));
    CHECK_THROWS_AS(Ring::parse("Z/6"), Error);
    CHECK_THROWS_AS(Ring::parse("R"), Error);
    CHECK(Ring::integers().is_unit(-1));
    CHECK_FALSE(Ring::integers().is_unit(2));
    CHECK(Ring::mod(5).is_unit(2));
    CHECK(Ring::mod(5).reduce(-3) == 2);
    CHECK(Ring::mod(5).inverse(2) == 3);
    CHECK(Ring::rationals().is_unit(4));
  }

  TEST_CASE("sparse matrix basics") {
    const Matrix a = Matrix::from_rows({{1, 2}, {0, -1}});
    const Matrix b = Matrix::from_rows({{0, 1}, {3, 0}});
    CHECK(multiply(a, b) == Matrix::from_rows({{6, 1}, {-3, 0}}));
    CHECK(multiply(a, b, Exec::parallel) == multiply(a, b));
    CHECK(a.transpose() == Matrix::from_rows({{1, 0}, {2, -1}}));
    CHECK(a.select({1}, {0, 1}) == Matrix::from_rows({{0, -1}}));
    CHECK_THROWS(a.at(2, 0));
    CHECK(Matrix::from_rows({{2, 4}}).is_zero(Ring::mod(2)));
  }

  TEST_CASE("smith normal form: known diagonal") {
    const auto s = smith_normal_form(Matrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), Ring::integers());
    REQUIRE(s.factors.size() == 3);
    CHECK(s.factors[0] == 2);
    CHECK(s.factors[1] == 6);
    CHECK(s.factors[2] == 12);
  }

  TEST_CASE("smith normal form agrees with determinantal divisors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      const Matrix m = random_matrix(rng, rows, cols, 6);
      const auto expected = factors_by_minors(m);
      const auto got = smith_normal_form(m, Ring::integers());
      INFO("matrix " << m.to_string());
      CHECK(got.rank == expected.size());
      CHECK(got.factors == expected);
      // over Z/p the rank drops exactly where p divides a factor
      for (unsigned long p : {2ul, 3ul, 5ul}) {
        std::size_t units = 0;
        for (const auto& f : expected)
          if (f % p != 0) ++units;
        CHECK(rank(m, Ring::mod(p)) == units);
      }
      CHECK(rank(m, Ring::rationals()) == expected.size());
    }
  }

  TEST_CASE("homology of the hexagon and of the projective plane") {
    const auto hex = homology(chain_complex(fixtures::hexagon(), Ring::integers()));
    CHECK(hex.at(0) == HomologyGroup{1, {}});
    CHECK(hex.at(1) == HomologyGroup{1, {}});

    const auto rp2 = SimplicialComplex::from_simplices(
        {"1", "2", "3", "4", "5", "6"}, {{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"},
                                         {"1", "2", "6"}, {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"},
                                         {"3", "4", "6"}, {"3", "5", "6"}});
    const auto hz = homology(chain_complex(rp2, Ring::integers()));
    CHECK(hz.at(0) == HomologyGroup{1, {}});
    CHECK(hz.at(1) == HomologyGroup{0, {Integer(2)}});
    CHECK(hz.at(2).is_zero());
    const auto h2 = homology(chain_complex(rp2, Ring::mod(2)));
    CHECK(h2.at(1).betti == 1);
    CHECK(h2.at(2).betti == 1);
    CHECK(homology(chain_complex(rp2, Ring::rationals())).at(1).is_zero());
  }

  TEST_CASE("homology rejects a non-complex") {
    const ChainComplex bad(Ring::integers(), 0, {1, 1, 1}, {Matrix(0, 1), Matrix::from_rows({{1}}), Matrix::from_rows({{1}})});
    CHECK_THROWS_AS(homology(bad), NotAComplex);
  }

  TEST_CASE("mapping cone acyclicity") {
    const ChainComplex c = chain_complex(fixtures::circle(), Ring::integers());
    CHECK(is_cone_acyclic(identity_map(c)));
    ChainMap zero{c, c, 0, {}};
    CHECK_FALSE(is_cone_acyclic(zero));
    // multiplication by 2 is an equivalence over Z/3 but not over Z
    ChainMap two{c, c, 0, {}};
    for (int q = 0; q <= 1; ++q) two.components[q] = Matrix::identity(c.rank(q)).scaled(2);
    CHECK_FALSE(is_cone_acyclic(two));
    const ChainComplex c3 = c.with_ring(Ring::mod(3));
    ChainMap two3{c3, c3, 0, two.components};
    CHECK(is_cone_acyclic(two3));
    ChainMap broken{c, c, 0, {{0, Matrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})}}};
    CHECK_THROWS_AS(is_cone_acyclic(broken), Error);
  }

  TEST_CASE("betti numbers over Q match Z modulo torsion on the corpus") {
    for (const auto& [name, ks] : fixtures::corpus()) {
      INFO(name);
      const auto z = homology(delta_complexes(ks, Ring::integers()).codelta.underlying());
      const auto q = homology(delta_complexes(ks, Ring::rationals()).codelta.underlying());
      for (const auto& [d, g] : z) CHECK(q.at(d).betti == g.betti);
    }
  }
}
