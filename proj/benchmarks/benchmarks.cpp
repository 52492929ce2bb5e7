#include <benchmark/benchmark.h>

#include "homent/counting.hpp"
#include "homent/critical.hpp"
#include "homent/energy.hpp"
#include "homent/lattice.hpp"
#include "homent/molecule.hpp"
#include "homent/potential.hpp"
#include "homent/tiling.hpp"

namespace {

using namespace homent;

void BM_CountClassesExact(benchmark::State& state) {
  const MoleculeSpec spec = MoleculeSpec::torus();
  const auto n = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    auto count = count_classes(spec, n, 1.0, 0.1, 0.5, 0.1);
    benchmark::DoNotOptimize(count.count);
  }
}
BENCHMARK(BM_CountClassesExact)->Arg(100)->Arg(400)->Arg(1600);

void BM_CountClassesLog(benchmark::State& state) {
  const MoleculeSpec spec = MoleculeSpec::torus();
  const auto n = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    double v = count_classes_log(spec, n, 1.0, 0.05, 0.5, 0.05);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CountClassesLog)->Arg(1000)->Arg(10000)->Arg(30000);

void BM_FindCriticalPoints(benchmark::State& state) {
  const auto n = static_cast<Coord>(state.range(0));
  const WindowEnergy energy =
      build_energy(LatticeWindow::interval(0, n - 1), cosine_well(0.05));
  for (auto _ : state) {
    auto points = find_critical_points(energy);
    benchmark::DoNotOptimize(points.size());
  }
}
BENCHMARK(BM_FindCriticalPoints)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_QuasiTile(benchmark::State& state) {
  const Coord big = static_cast<Coord>(state.range(0));
  const LatticeWindow window = LatticeWindow::cube_at(2, {0, 0}, big);
  const std::vector<LatticeWindow> tiles = {LatticeWindow::cube_at(2, {0, 0}, 8)};
  for (auto _ : state) {
    auto result = quasi_tile(window, tiles, 0.1);
    benchmark::DoNotOptimize(result.covered);
  }
}
BENCHMARK(BM_QuasiTile)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
