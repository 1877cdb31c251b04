#include "tptmap/analysis.hpp"
#include "tptmap/committor.hpp"
#include "tptmap/cv_system.hpp"
#include "tptmap/fdref.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <numbers>

namespace {

using namespace tptmap;

struct TorusCloud {
  PointCloud cloud;
  TensorField field;
};

const TorusCloud& torus_cloud(std::size_t n) {
  static std::map<std::size_t, TorusCloud> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const CvSystem sys = torus_system(1.0);
    const auto traj = simulate_cv(sys, Vec::Zero(2), 1e-3, n * 1000, 1000, 1);
    PointCloud cloud(traj.points, sys.topology);
    TensorField field = tensors_at(sys, cloud);
    it = cache.emplace(n, TorusCloud{std::move(cloud), std::move(field)}).first;
  }
  return it->second;
}

void BM_MahalanobisKernel(benchmark::State& state) {
  const auto& t = torus_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mahalanobis_kernel(t.cloud, t.field, 0.02).k.nonZeros());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MahalanobisKernel)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_IsotropicKernel(benchmark::State& state) {
  const auto& t = torus_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(isotropic_kernel(t.cloud, 0.02).k.nonZeros());
}
BENCHMARK(BM_IsotropicKernel)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Generator(benchmark::State& state) {
  const auto& t = torus_cloud(static_cast<std::size_t>(state.range(0)));
  const KernelMatrix k = mahalanobis_kernel(t.cloud, t.field, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(build_generator(k, 0.5, 1.0).l.nonZeros());
}
BENCHMARK(BM_Generator)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Committor(benchmark::State& state) {
  const auto& t = torus_cloud(static_cast<std::size_t>(state.range(0)));
  const double pi = std::numbers::pi;
  const auto sets = classify(t.cloud, Ellipse::ball((Vec(2) << 0.5 * pi, -0.5 * pi).finished(), 0.5),
                             Ellipse::ball((Vec(2) << -0.5 * pi, 0.5 * pi).finished(), 0.5));
  const auto l = build_generator(mahalanobis_kernel(t.cloud, t.field, 0.02), 0.5, 1.0);
  SolverOptions opts;
  if (state.range(1) == 1) opts.direct_max_n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_committor(l, sets.a, sets.b, opts).q.sum());
  state.SetLabel(state.range(1) == 1 ? "bicgstab" : "direct");
}
BENCHMARK(BM_Committor)->Args({1000, 0})->Args({1000, 1})->Args({4000, 0})->Args({4000, 1})
    ->Unit(benchmark::kMillisecond);

void BM_FdCommittor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CvSystem sys = torus_system(1.0);
  const Grid2D g = Grid2D::from_functions(
      n, n, sys.topology, [&](double x, double y) { return sys.free_energy((Vec(2) << x, y).finished()); },
      [&](double x, double y) { return sys.tensor((Vec(2) << x, y).finished()); });
  const double pi = std::numbers::pi;
  const Ellipse a = Ellipse::ball((Vec(2) << 0.5 * pi, -0.5 * pi).finished(), 0.5);
  const Ellipse b = Ellipse::ball((Vec(2) << -0.5 * pi, 0.5 * pi).finished(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fd_committor(g, 1.0, a, b).q.sum());
}
BENCHMARK(BM_FdCommittor)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EpsilonHeuristic(benchmark::State& state) {
  const auto& t = torus_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_heuristic(t.cloud, &t.field));
}
BENCHMARK(BM_EpsilonHeuristic)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_SimulateTorus(benchmark::State& state) {
  const CvSystem sys = torus_system(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_cv(sys, Vec::Zero(2), 1e-3, 100000, 100, 3).points.sum());
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SimulateTorus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
