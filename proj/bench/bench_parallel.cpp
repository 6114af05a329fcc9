// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "rkdual/mccrory.hpp"

using namespace rkdual;

namespace {

// X = (Delta^3)', K = Delta^3, each barycenter sent to the largest vertex of its simplex.
KSpace subdivided_tetrahedron() {
  const SimplicialComplex k = SimplicialComplex::full_simplex({"a", "b", "c", "d"});
  const DerivedComplex kp = barycentric_subdivision(k);
  const SimplicialComplex& x = kp.prime();
  std::map<std::string, std::string> assignment;
  for (SimplexId s = 0; s < k.size(); ++s) {
    const SimplexId point = kp.prime_simplex(*kp.find({s}));
    assignment[x.vertex_name(x.vertices(point)[0])] = k.vertex_name(k.vertices(s).back());
  }
  return validate_kspace(x, k, assignment);
}

const KSpace& input() {
  static const KSpace ks = subdivided_tetrahedron();
  return ks;
}

Matrix random_matrix(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(density);
  std::uniform_int_distribution<long> value(-3, 3);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (hit(rng)) m.set(r, c, value(rng));
  return m;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_multiply(benchmark::State& state) {
  const Matrix a = random_matrix(static_cast<std::size_t>(state.range(1)), 0.05, 1);
  const Matrix b = random_matrix(static_cast<std::size_t>(state.range(1)), 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b, exec_of(state)));
  label(state);
}
BENCHMARK(BM_multiply)->ArgsProduct({{0, 1}, {200, 400}})->Unit(benchmark::kMillisecond);

void BM_e_equivalence(benchmark::State& state) {
  const RKComplex c = delta_complexes(input(), Ring::integers()).codelta;
  for (auto _ : state) benchmark::DoNotOptimize(verify_e_equivalence(c, exec_of(state)));
  label(state);
}
BENCHMARK(BM_e_equivalence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ball_complex(benchmark::State& state) {
  const BallComplex bc = ball_complex(input());
  for (auto _ : state) benchmark::DoNotOptimize(verify_ball_complex(bc, exec_of(state)));
  label(state);
}
BENCHMARK(BM_ball_complex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_equivalences(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_equivalences(input(), Ring::integers(), exec_of(state)));
  label(state);
}
BENCHMARK(BM_equivalences)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
