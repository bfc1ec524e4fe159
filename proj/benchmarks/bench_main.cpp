#include <benchmark/benchmark.h>

#include <random>

#include "momentumlab/abelian.hpp"
#include "momentumlab/convex.hpp"
#include "momentumlab/momentum.hpp"
#include "momentumlab/parallel.hpp"
#include "momentumlab/rkhs.hpp"
#include "momentumlab/unirep.hpp"

using namespace momentumlab;

namespace {

std::vector<Vec> gaussian_points(int count, int d, std::uint64_t seed) {
  auto rng = parallel::stream_rng(seed, 0);
  std::normal_distribution<double> g;
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v(k) = g(rng);
    pts.push_back(v);
  }
  return pts;
}

void BM_HullDistance(benchmark::State& state) {
  const convex::ConvexSetV X(gaussian_points(static_cast<int>(state.range(0)), 3, 1));
  const Vec alpha = Vec::Constant(3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(convex::hull_distance(X, alpha).distance);
}
BENCHMARK(BM_HullDistance)->Arg(16)->Arg(64)->Arg(256);

void BM_DualCone(benchmark::State& state) {
  auto rays = gaussian_points(static_cast<int>(state.range(0)), 4, 2);
  for (auto& r : rays) r(3) = std::abs(r(3)) + 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(convex::dual_cone(rays).rays().size());
}
BENCHMARK(BM_DualCone)->Arg(8)->Arg(32);

void BM_MomentumSetSu2(benchmark::State& state) {
  const auto rep = unirep::su2_spin(static_cast<int>(state.range(0)));
  const auto dirs = momentum::default_directions(3, 64);
  for (auto _ : state) benchmark::DoNotOptimize(momentum::momentum_set_estimate(rep, 400, dirs, 7).gap);
}
BENCHMARK(BM_MomentumSetSu2)->Arg(2)->Arg(10);

void BM_SpectralSupOscillator(benchmark::State& state) {
  const auto rep = unirep::oscillator_truncated(static_cast<int>(state.range(0)));
  Vec x(4);
  x << 0.3, -0.2, 0.1, 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(unirep::spectral_sup(rep, x));
}
BENCHMARK(BM_SpectralSupOscillator)->Arg(32)->Arg(128);

void BM_RecoverMeasure(benchmark::State& state) {
  auto rng = parallel::stream_rng(3, 0);
  const auto P = abelian::random_measure(static_cast<int>(state.range(0)), 3, 5, rng);
  const auto gens = abelian::generators_of_measure(P);
  for (auto _ : state) benchmark::DoNotOptimize(abelian::recover_measure(gens).measure.atoms().size());
}
BENCHMARK(BM_RecoverMeasure)->Arg(8)->Arg(32);

void BM_KernelMomentum(benchmark::State& state) {
  const auto K = rkhs::fock_kernel(2);
  const auto action = rkhs::torus_rotation(2);
  rkhs::Point m(2);
  m << cplx(0.5, 0.2), cplx(-1.0, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(rkhs::kernel_momentum(K, action, m));
}
BENCHMARK(BM_KernelMomentum);

}  // namespace

BENCHMARK_MAIN();
