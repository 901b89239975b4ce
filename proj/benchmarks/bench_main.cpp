#include <benchmark/benchmark.h>

#include <random>

#include "graphrd/cut_norm.hpp"
#include "graphrd/diffusion.hpp"
#include "graphrd/particles.hpp"
#include "graphrd/profiles.hpp"
#include "graphrd/rd_solver.hpp"

using namespace graphrd;

namespace {

StepGraphon cosine(std::size_t n) { return quotient_step(AnalyticGraphon::smooth_cosine(0.5), n); }

Matrix signed_matrix(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = i; j < d.cols(); ++j) d(i, j) = d(j, i) = u(rng);
  }
  return d;
}

void BM_ApplyL(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = cosine(n);
  const auto u = Profile::sine(0.3, 0.5).cell_averages(n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_L(g, u));
}
BENCHMARK(BM_ApplyL)->RangeMultiplier(4)->Range(16, 1024);

void BM_Semigroup(benchmark::State& state) {
  const auto g = cosine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(semigroup_matrix(g, 1.0));
}
BENCHMARK(BM_Semigroup)->RangeMultiplier(4)->Range(16, 256);

void BM_IntegrateRd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = cosine(n);
  const auto u0 = Profile::sine(0.3, 0.5).cell_averages(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_rd(g, ReactionTerm::logistic(1.0), u0, 1.0, 1e-3));
  }
}
BENCHMARK(BM_IntegrateRd)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CutNormExact(benchmark::State& state) {
  const auto d = signed_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm_exact(d, CutVariant::ST));
}
BENCHMARK(BM_CutNormExact)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_CutNormHeuristic(benchmark::State& state) {
  const auto d = signed_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm_heuristic(d, 24, 1));
}
BENCHMARK(BM_CutNormHeuristic)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double ell = 200.0;
  const auto g = cosine(n);
  const auto m0 = counts_from_density(Profile::sine(0.3, 0.5).cell_averages(n), ell);
  std::uint64_t seed = 0;
  std::size_t events = 0;
  for (auto _ : state) {
    const auto traj = simulate(g, RateFamily::linear(1.0), RateFamily::quadratic(1.0), m0, ell, 1.0,
                               static_cast<Count>(20 * ell), seed++);
    events += traj.events().size();
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
