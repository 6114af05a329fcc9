#pragma once

#include <random>
#include <string>
#include <vector>

#include "rkdual/verifier.hpp"

namespace fixtures {

using namespace rkdual;

inline SimplicialComplex circle() { return SimplicialComplex::simplex_boundary({"a", "b", "c"}); }

inline SimplicialComplex hexagon() {
  return SimplicialComplex::from_simplices(
      {"x0", "x1", "x2", "x3", "x4", "x5"},
      {{"x0", "x1"}, {"x1", "x2"}, {"x2", "x3"}, {"x3", "x4"}, {"x4", "x5"}, {"x5", "x0"}});
}

inline std::map<std::string, std::string> hex_assignment() {
  return {{"x0", "a"}, {"x1", "b"}, {"x2", "c"}, {"x3", "a"}, {"x4", "b"}, {"x5", "c"}};
}

inline KSpace hex() { return validate_kspace(hexagon(), circle(), hex_assignment()); }
inline KSpace pt() { return KSpace::identity(SimplicialComplex::full_simplex({"p"})); }
inline KSpace edge() { return KSpace::identity(SimplicialComplex::full_simplex({"a", "b"})); }
inline KSpace circ3() { return KSpace::identity(circle()); }
inline KSpace id2() { return KSpace::identity(SimplicialComplex::full_simplex({"a", "b", "c"})); }
inline KSpace tri() {
  return validate_kspace(SimplicialComplex::full_simplex({"a", "b", "c"}), SimplicialComplex::full_simplex({"a", "b"}),
                         {{"a", "a"}, {"b", "b"}, {"c", "b"}});
}

struct Named {
  std::string name;
  KSpace ks;
};

inline std::vector<Named> corpus() {
  return {{"PT", pt()}, {"EDGE", edge()}, {"TRI", tri()}, {"CIRC3", circ3()}, {"HEX", hex()}, {"ID2", id2()}};
}

inline std::vector<KSpace> random_kspaces(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<KSpace> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_kspace(rng));
  return out;
}

inline std::string corpus_path(const std::string& file) { return std::string(RKDUAL_CORPUS_DIR) + "/" + file; }

}  // namespace fixtures
