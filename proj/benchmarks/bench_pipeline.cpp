#include <benchmark/benchmark.h>

#include "rnav/attitude.hpp"
#include "rnav/augmented.hpp"
#include "rnav/observability.hpp"
#include "rnav/riccati.hpp"
#include "rnav/scenario.hpp"
#include "rnav/trajectory.hpp"

namespace {

const rnav::WorldConstants kWorld;

std::vector<rnav::RigidBodyTruth> short_run() {
  return rnav::run_truth(rnav::eight_trajectory(), kWorld, 1e-3, 2.0);
}

void BM_TruthRun(benchmark::State& state) {
  const rnav::TrajectorySpec spec = rnav::eight_trajectory();
  for (auto _ : state) {
    auto truth = rnav::run_truth(spec, kWorld, 1e-3, 1.0);
    benchmark::DoNotOptimize(truth.data());
  }
}
BENCHMARK(BM_TruthRun);

void BM_RiccatiStep(benchmark::State& state) {
  const auto truth = short_run();
  rnav::RiccatiConfig cfg;
  cfg.gravity_norm_sq = kWorld.gravity_i.squaredNorm();
  rnav::RiccatiObserver observer(cfg, rnav::Vec13::Zero());
  std::size_t k = 0;
  for (auto _ : state) {
    const rnav::RigidBodyTruth& s = truth[k++ % truth.size()];
    const rnav::Vec3 p_b =
        s.R.transposed() * (s.p_i - kWorld.anchor_i);
    observer.step(s.omega, s.a_b, p_b.norm());
    benchmark::DoNotOptimize(observer.state().data());
  }
}
BENCHMARK(BM_RiccatiStep);

void BM_AttitudeStep(benchmark::State& state) {
  const auto truth = short_run();
  rnav::AttitudeConfig cfg;
  cfg.mag_dir_i = kWorld.mag_dir_i;
  cfg.gravity_i = kWorld.gravity_i;
  rnav::AttitudeFilter filter(cfg, rnav::Rotation());
  std::size_t k = 0;
  for (auto _ : state) {
    const rnav::RigidBodyTruth& s = truth[k++ % truth.size()];
    const rnav::Vec3 mag = s.R.transposed() * kWorld.mag_dir_i;
    const rnav::Vec3 g_b = s.R.transposed() * kWorld.gravity_i;
    filter.step(s.omega, mag, g_b);
    benchmark::DoNotOptimize(&filter.attitude());
  }
}
BENCHMARK(BM_AttitudeStep);

void BM_GramianWindow(benchmark::State& state) {
  const auto truth = short_run();
  const auto level = static_cast<rnav::GramianLevel>(state.range(0));
  for (auto _ : state) {
    auto report = rnav::gramian(level, 0.0, 2.0, truth, 1e-3);
    benchmark::DoNotOptimize(report.min_eig);
  }
}
BENCHMARK(BM_GramianWindow)
    ->Arg(static_cast<int>(rnav::GramianLevel::full_augmented))
    ->Arg(static_cast<int>(rnav::GramianLevel::reduced_pair))
    ->Arg(static_cast<int>(rnav::GramianLevel::pe_phi));

}  // namespace

BENCHMARK_MAIN();
