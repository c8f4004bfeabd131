#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cbo/bench/objectives.hpp"
#include "cbo/dynamics.hpp"
#include "cbo/fem.hpp"
#include "cbo/noise.hpp"

namespace {

std::vector<double> random_energies(long n) {
  cbo::RngStream rng(1, 0);
  std::vector<double> e(static_cast<std::size_t>(n));
  for (double& v : e) v = 100.0 * rng.next_uniform();
  return e;
}

void BM_GibbsWeights(benchmark::State& state) {
  const auto e = random_energies(state.range(0));
  for (auto _ : state) {
    auto w = cbo::gibbs_weights(e, 1e6);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_GibbsWeights)->Arg(1000)->Arg(100000);

void BM_Rastrigin(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)), 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(cbo::bench::rastrigin(x));
}
BENCHMARK(BM_Rastrigin)->Arg(15)->Arg(100);

void BM_CboStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  cbo::Ensemble ens(1000, d, 7);
  for (long i = 0; i < ens.size(); ++i)
    for (int k = 0; k < d; ++k) ens.position(i)[static_cast<std::size_t>(k)] = ens.stream(i).next_normal();
  std::vector<double> c(static_cast<std::size_t>(d), 0.1);
  cbo::CboParams params;
  cbo::NoiseModel noise{cbo::NoiseKind::anisotropic, 1.0, 0, 0, false};
  auto dom = cbo::Domain::box(std::vector<double>(static_cast<std::size_t>(d), -10.0),
                              std::vector<double>(static_cast<std::size_t>(d), 10.0));
  cbo::StepOptions opts;
  opts.threads = 1;
  for (auto _ : state) cbo::cbo_step(ens, c, params, noise, dom, opts);
}
BENCHMARK(BM_CboStep)->Arg(2)->Arg(100);

void BM_HierarchicalTransform(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = (1 << m) - 1;
  cbo::RngStream rng(3, 0);
  std::vector<double> beta(static_cast<std::size_t>(n));
  for (double& v : beta) v = rng.next_normal();
  std::vector<double> out(static_cast<std::size_t>(n)), scratch(static_cast<std::size_t>(n));
  for (auto _ : state) {
    cbo::hierarchical_transform_into(beta, m / 2 + 1, m, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_HierarchicalTransform)->Arg(5)->Arg(7);

void BM_GlEnergy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const cbo::fem::FeLevel lvl{m, 0.5, 1.0};
  const cbo::fem::WellParams w{0.25, 0.75, 1.5, 500.0};
  cbo::RngStream rng(5, 0);
  std::vector<double> field(static_cast<std::size_t>(lvl.interior_nodes()));
  for (double& v : field) v = rng.next_uniform();
  for (auto _ : state) benchmark::DoNotOptimize(cbo::fem::gl_energy(field, lvl, w));
}
BENCHMARK(BM_GlEnergy)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
