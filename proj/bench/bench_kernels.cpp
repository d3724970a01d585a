#include <benchmark/benchmark.h>

#include <cmath>

#include "wavebranch/continuation.hpp"
#include "wavebranch/hodograph.hpp"
#include "wavebranch/physical.hpp"
#include "wavebranch/sweeps.hpp"

using namespace wavebranch;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

struct Fixture {
  BranchSetup setup;
  Eigen::MatrixXd h;
  std::vector<PhysicalWave> waves;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const auto m = VorticityModel({1.0, -2.0});
    Fixture r;
    r.setup = make_branch_setup(m, bernoulli_curve(m).R_c + 0.02, 128, 128);
    const auto branch = branch_extend(r.setup, branch_start(r.setup), 0.01, 4, {}, false);
    r.h = branch.points.back().field.h;
    for (std::size_t i = 1; i < branch.points.size(); ++i)
      r.waves.push_back(reconstruct_physical(r.setup, branch.points[i].field, 64, 64));
    return r;
  }();
  return f;
}

void BM_hodograph_equations(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(hodograph_equations(f.setup.grid, f.h, 1.0, f.setup.R, mode(state)));
  label(state);
}

void BM_negative_count_series(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(negative_count_series(f.waves, 2, mode(state)));
  label(state);
}

void BM_stream_sweep(benchmark::State& state) {
  const auto m = VorticityModel({0.0, 0.3});
  std::vector<double> s;
  for (int i = 0; i < 64; ++i) s.push_back(m.s0() + 0.05 + 0.03 * i);
  for (auto _ : state) benchmark::DoNotOptimize(stream_sweep(m, s, mode(state)));
  label(state);
}

void BM_sigma_sweep(benchmark::State& state) {
  const auto st = solve_stream(VorticityModel({1.0, -2.0}), 1.7);
  std::vector<double> taus;
  for (int i = 0; i < 256; ++i) taus.push_back(0.02 * i);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_sweep(st, taus, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_hodograph_equations)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_negative_count_series)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stream_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sigma_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
