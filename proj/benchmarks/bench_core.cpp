#include <benchmark/benchmark.h>

#include "recdim/continued_fraction.hpp"
#include "recdim/grid_index.hpp"
#include "recdim/hitting.hpp"

namespace {

using namespace recdim;

SystemSpec golden() { return make_rotation(ContinuedFraction::golden(), 190); }

void OrbitRotation(benchmark::State& state) {
  auto sys = golden();
  auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto orb = generate_orbit_seeded(sys, 42, 0, n);
    benchmark::DoNotOptimize(orb.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(OrbitRotation)->Range(1 << 16, 1 << 22);

void OrbitDoubling(benchmark::State& state) {
  auto sys = make_doubling();
  auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto orb = generate_orbit_seeded(sys, 42, 0, n);
    benchmark::DoNotOptimize(orb.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(OrbitDoubling)->Range(1 << 16, 1 << 22);

void HittingSinglePass(benchmark::State& state) {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 42, 0, static_cast<std::uint64_t>(state.range(0)));
  RadiusSchedule sched(4, 16);
  std::uint64_t t = 0;
  for (auto _ : state) {
    Point y = sample_one(sys, 1000 + t++);
    auto prof = hitting_single_pass(orb, y, sched);
    benchmark::DoNotOptimize(prof.tau.data());
  }
}
BENCHMARK(HittingSinglePass)->Range(1 << 18, 1 << 22);

void BatchHitting1k(benchmark::State& state) {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 42, 0, 1 << 20);
  RadiusSchedule sched(4, 14);
  auto targets = sample_measure(sys, 1000, 7);
  for (auto _ : state) {
    auto profs = batch_hitting(orb, targets, sched);
    benchmark::DoNotOptimize(profs.data());
  }
}
BENCHMARK(BatchHitting1k);

void OccupationGrid(benchmark::State& state) {
  auto sys = golden();
  auto cloud = sample_cloud(sys, 1 << 20, 3);
  auto idx = build_grid_index(cloud, 16);
  RadiusSchedule sched(4, 16);
  std::uint64_t t = 0;
  for (auto _ : state) {
    Point y = sample_one(sys, 5000 + t++);
    auto counts = occupation_counts(cloud, idx, y, sched);
    benchmark::DoNotOptimize(counts.data());
  }
}
BENCHMARK(OccupationGrid);

void OccupationLinear(benchmark::State& state) {
  auto sys = golden();
  auto cloud = sample_cloud(sys, 1 << 20, 3);
  RadiusSchedule sched(4, 16);
  std::uint64_t t = 0;
  for (auto _ : state) {
    Point y = sample_one(sys, 5000 + t++);
    auto counts = occupation_counts_linear(cloud, y, sched);
    benchmark::DoNotOptimize(counts.data());
  }
}
BENCHMARK(OccupationLinear);

void TypeOracle(benchmark::State& state) {
  auto alpha = cf_value(ContinuedFraction::golden(), 190);
  for (auto _ : state) {
    double v = type_bruteforce_oracle(alpha, 1.0, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(TypeOracle)->Range(1 << 12, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
