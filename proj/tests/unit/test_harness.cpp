#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "cbo/bench/config.hpp"
#include "cbo/bench/experiment.hpp"
#include "cbo/bench/objectives.hpp"
#include "cbo/bench/persist.hpp"
#include "cbo/bench/presets.hpp"

using namespace cbo;
using namespace cbo::bench;

namespace {

std::filesystem::path temp_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() / (std::string("cbo_test_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ExperimentConfig small_sphere_config() {
  ExperimentConfig c;
  c.objective = "sphere";
  c.dim = 2;
  c.domain.type = "omega1";
  c.params.lambda = 1.0;
  c.params.sigma = 0.5;
  c.params.dt = 0.01;
  c.params.iterations = 150;
  c.heuristics.alpha0 = 1e6;
  c.heuristics.alphaK = 1e6;
  c.init.type = "gaussian";
  c.init.mean = {3.62, 3.62};
  c.init.variance = 10.0;
  c.particles = 60;
  c.seeds = {1, 2, 3};
  c.success_threshold = 1e-4;
  return c;
}

}  // namespace

TEST_CASE("rastrigin closed-form values") {
  for (int d : {1, 2, 7}) {
    std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    CHECK(rastrigin(zero) == doctest::Approx(0.0).epsilon(1e-12));
    std::vector<double> ones(static_cast<std::size_t>(d), 1.0);
    CHECK(rastrigin(ones) == doctest::Approx(static_cast<double>(d)).epsilon(1e-10));
    std::vector<double> halves(static_cast<std::size_t>(d), 0.5);
    CHECK(rastrigin(halves) == doctest::Approx(20.25 * d).epsilon(1e-10));
  }
}

TEST_CASE("rastrigin is nonnegative with its only zero at the origin") {
  RngStream rng(71, 0);
  for (int d : {2, 10}) {
    for (int trial = 0; trial < 100000 / d; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (double& v : x) v = 10.24 * rng.next_uniform() - 5.12;
      const double val = rastrigin(x);
      CHECK(val >= 0.0);
      if (val < 1e-12) {
        double norm = 0.0;
        for (double v : x) norm += v * v;
        CHECK(std::sqrt(norm) < 1e-8);
      }
    }
  }
}

TEST_CASE("degenerate gaussian init collapses to the projected mean") {
  auto dom = Domain::box({0.0, 0.0}, {1.0, 1.0});
  const std::vector<double> mean{2.0, 0.5};
  auto ens = init_gaussian(2, mean, 1e-30, dom, 20, 9);
  for (long i = 0; i < ens.size(); ++i) {
    CHECK(ens.position(i)[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ens.position(i)[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("gaussian init hits the requested mean within the CLT band") {
  auto dom = Domain::all_space(3);
  const std::vector<double> mean{1.0, -2.0, 0.5};
  const double variance = 4.0;
  const long n = 100000;
  auto ens = init_gaussian(3, mean, variance, dom, n, 31);
  for (int k = 0; k < 3; ++k) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) acc += ens.position(i)[static_cast<std::size_t>(k)];
    const double band = 3.0 * std::sqrt(variance) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(acc / n - mean[static_cast<std::size_t>(k)]) <= band);
  }
}

TEST_CASE("benchmark preset init is feasible after projection") {
  auto dom = make_paper_domain(PaperDomain::omega1, 2);
  const std::vector<double> mean{5.12 / std::sqrt(2.0), 5.12 / std::sqrt(2.0)};
  auto ens = init_gaussian(2, mean, 10.0, dom, 5000, 12);
  for (long i = 0; i < ens.size(); ++i) CHECK(dom.contains(ens.position(i), 1e-12));
}

TEST_CASE("zero-iteration experiment reports the initial residual") {
  auto c = small_sphere_config();
  c.params.iterations = 0;
  c.seeds = {1};
  const auto res = run_experiment(c);
  REQUIRE(res.runs.size() == 1);
  CHECK(res.aggregate.mean_final == res.runs[0].record.rows[0].residual);
}

TEST_CASE("admissible sphere runs succeed on every seed") {
  auto c = small_sphere_config();
  c.params.sigma = 0.5 * std::sqrt(2.0);
  c.params.iterations = 2000;  // enough horizon to grind below 1e-4
  c.particles = 200;
  c.seeds.resize(20);
  for (std::size_t i = 0; i < 20; ++i) c.seeds[i] = i + 1;
  const auto res = run_experiment(c);
  REQUIRE(res.aggregate.success_rate.has_value());
  CHECK(*res.aggregate.success_rate == 1.0);
}

TEST_CASE("config serialization round-trips to a fixed point") {
  for (const auto& name : preset_names()) {
    for (auto scale : {Scale::desk, Scale::paper}) {
      const auto c = preset(name, scale);
      const auto s1 = serialize_config(c);
      const auto c2 = parse_config(s1);
      const auto s2 = serialize_config(c2);
      CHECK(s1 == s2);
    }
  }
}

TEST_CASE("config validation lists every failure at once") {
  const std::string bad = R"({
    "objective": "unknown_thing",
    "dim": -3,
    "params": {"lambda": -1.0, "dt": 0.0},
    "seeds": []
  })";
  try {
    parse_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("objective") != std::string::npos);
    CHECK(msg.find("lambda") != std::string::npos);
    CHECK(msg.find("dt") != std::string::npos);
    CHECK(msg.find("seeds") != std::string::npos);
  }
}

TEST_CASE("changing one seed changes only that run") {
  auto c = small_sphere_config();
  c.params.iterations = 30;
  const auto base = run_experiment(c);
  auto c2 = c;
  c2.seeds[1] = 77;
  const auto alt = run_experiment(c2);
  REQUIRE(base.runs.size() == alt.runs.size());
  for (std::size_t r = 0; r < base.runs.size(); ++r) {
    const bool same_seed = c.seeds[r] == c2.seeds[r];
    const bool same_final =
        base.runs[r].record.rows.back().residual == alt.runs[r].record.rows.back().residual;
    CHECK(same_final == same_seed);
  }
}

TEST_CASE("presets reproduce the published parameter tables") {
  const auto sweep = preset("fig-sweep", Scale::paper);
  CHECK(sweep.objective == "rastrigin");
  CHECK(sweep.dim == 2);
  CHECK(sweep.domain.type == "omega1");
  CHECK(sweep.particles == 1000);
  CHECK(sweep.params.dt == 1e-2);
  CHECK(sweep.params.iterations == 100);
  CHECK(sweep.heuristics.alpha0 == 1e6);
  CHECK(sweep.heuristics.alphaK == 1e6);
  REQUIRE(sweep.sweep.has_value());
  CHECK(sweep.sweep->lambda_range.lo == 1e-1);
  CHECK(sweep.sweep->lambda_range.hi == doctest::Approx(std::pow(10.0, 2.5)).epsilon(1e-15));
  CHECK(sweep.sweep->lambda_range.count == 100);
  CHECK(sweep.sweep->sigma_range.lo == 1e-1);
  CHECK(sweep.sweep->sigma_range.hi == doctest::Approx(std::pow(10.0, 1.1)).epsilon(1e-15));
  CHECK(sweep.sweep->sigma_range.count == 100);
  CHECK(sweep.init.mean[0] == doctest::Approx(5.12 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sweep.init.variance == 10.0);

  const auto mid = preset("fig-middle-scale", Scale::paper);
  CHECK(mid.dim == 15);
  CHECK(mid.domain.type == "omega2");
  CHECK(mid.particles == 1000);
  CHECK(mid.params.lambda == 1.0);
  CHECK(mid.params.iterations == 1000);
  CHECK(mid.params.dt == 1e-2);
  CHECK(mid.heuristics.alpha0 == 1e6);
  CHECK(mid.heuristics.alphaK == 1e9);
  CHECK(*mid.heuristics.gamma == 0.95);
  CHECK(*mid.heuristics.boost_S == 5.0);
  CHECK(boosted_sigma(mid.params.lambda, *mid.heuristics.boost_S) ==
        doctest::Approx(5.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(mid.seeds.size() == 20);

  const auto large = preset("fig-large-scale", Scale::paper);
  CHECK(large.dim == 100);
  CHECK(large.domain.type == "omega2");
  CHECK(large.init.mean[0] == doctest::Approx(5.12 / 10.0).epsilon(1e-15));
  CHECK(large.seeds.size() == 20);

  const auto ac = preset("fig-allen-cahn", Scale::paper);
  REQUIRE(ac.allen_cahn.has_value());
  CHECK(ac.allen_cahn->m == 7);
  CHECK(ac.allen_cahn->p == 1.5);
  CHECK(ac.allen_cahn->eps_inv_sq == 500.0);
  CHECK(ac.allen_cahn->v0 == 0.5);
  CHECK(ac.allen_cahn->v1 == 1.0);
  CHECK(ac.allen_cahn->w1 == 0.25);
  CHECK(ac.allen_cahn->w2 == 0.75);
  CHECK(ac.allen_cahn->iters_per_level == 100);
  CHECK(ac.allen_cahn->iters_finest == 1000);
  CHECK(ac.particles == 20 * 127);
  CHECK(ac.params.lambda == 1.0);
  CHECK(ac.params.sigma == 7.0);
  CHECK(ac.params.dt == 1e-2);
  CHECK(ac.heuristics.alpha0 == 1e6);

  const auto obs = preset("fig-obstacle", Scale::paper);
  REQUIRE(obs.allen_cahn.has_value());
  CHECK(obs.allen_cahn->obstacle.has_value());
  CHECK(obs.allen_cahn->iters_per_level == 1000);
  CHECK(obs.allen_cahn->iters_finest == 10000);
}

TEST_CASE("run CSV has K + 1 rows and round-trips the aggregate") {
  auto c = small_sphere_config();
  c.params.iterations = 3;
  c.seeds = {5};
  const auto res = run_experiment(c);
  const auto dir = temp_dir("csv");
  persist_experiment(res, dir);

  const auto rec = read_run_csv(dir / "run_seed5.csv");
  CHECK(rec.rows.size() == 4);
  for (std::size_t r = 0; r < rec.rows.size(); ++r) {
    CHECK(rec.rows[r].residual == res.runs[0].record.rows[r].residual);
    CHECK(rec.rows[r].best_energy == res.runs[0].record.rows[r].best_energy);
  }
}

TEST_CASE("persisted summary echoes a parseable config") {
  auto c = small_sphere_config();
  c.params.iterations = 5;
  const auto res = run_experiment(c);
  const auto dir = temp_dir("summary");
  const auto summary_path = persist_experiment(res, dir);
  std::ifstream is(summary_path);
  REQUIRE(is.good());
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"config\"") != std::string::npos);
  CHECK(text.find("\"aggregate\"") != std::string::npos);
  CHECK(text.find("\"version\"") != std::string::npos);
}

TEST_CASE("persist surfaces unwritable paths with context") {
  auto c = small_sphere_config();
  c.params.iterations = 1;
  c.seeds = {1};
  const auto res = run_experiment(c);
  try {
    persist_experiment(res, "/proc/cbo-no-such-dir");
    FAIL("expected a filesystem error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("cbo-no-such-dir") != std::string::npos);
  }
}

TEST_CASE("empty record set persists a zero-run summary and no CSVs") {
  ExperimentResult empty;
  empty.config = small_sphere_config();
  empty.aggregate.runs = 0;
  const auto dir = temp_dir("empty");
  persist_experiment(empty, dir);
  CHECK(std::filesystem::exists(dir / "summary.json"));
  int csvs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".csv") ++csvs;
  CHECK(csvs == 0);
}

TEST_CASE("enhanced runs solve Rastrigin d=20 in the majority of seeds") {
  auto c = preset("fig-middle-scale", Scale::desk);
  c.dim = 20;
  c.init.mean.assign(20, 5.12 / std::sqrt(20.0));
  const auto res = run_experiment(c);
  long successes = 0;
  for (const auto& r : res.runs) successes += r.success;
  CHECK(successes >= 11);  // majority of 20
}

TEST_CASE("one-cell sweep equals the single experiment") {
  auto c = small_sphere_config();
  c.seeds = {3};
  SweepGrid grid;
  grid.lambda_range = {1.0, 1.0, 1, true};
  grid.sigma_range = {0.5, 0.5, 1, true};
  const auto sweep = run_sweep(c, grid);
  REQUIRE(sweep.ln_final.size() == 1);
  auto single = c;
  single.params.lambda = 1.0;
  single.params.sigma = 0.5;
  const auto res = run_experiment(single);
  CHECK(sweep.ln_final[0] ==
        doctest::Approx(std::log(res.runs[0].record.rows.back().residual)).epsilon(1e-12));
}

TEST_CASE("huge volatility cells diverge") {
  auto c = small_sphere_config();
  c.params.iterations = 60;
  c.domain.type = "all_space";
  SweepGrid grid;
  grid.lambda_range = {0.5, 2.0, 2, true};
  grid.sigma_range = {1e3, 2e3, 2, true};
  grid.repetitions = 5;
  const auto sweep = run_sweep(c, grid);
  for (double v : sweep.ln_final) CHECK(v >= sweep.ln_initial);
}

TEST_CASE("sweep CSV layout") {
  auto c = small_sphere_config();
  c.params.iterations = 5;
  c.seeds = {1};
  SweepGrid grid;
  grid.lambda_range = {0.5, 2.0, 3, true};
  grid.sigma_range = {0.1, 1.0, 2, true};
  const auto sweep = run_sweep(c, grid);
  const auto dir = temp_dir("sweep");
  persist_sweep(sweep, dir);
  std::ifstream is(dir / "sweep.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header.rfind("lambda\\sigma,", 0) == 0);
  int rows = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("allen-cahn pipeline persists fields and per-level runs") {
  ExperimentConfig c;
  c.objective = "allen_cahn";
  AllenCahnSpec ac;
  ac.m = 3;
  ac.p = 2.0;
  ac.eps_inv_sq = 100.0;
  ac.iters_per_level = 10;
  ac.iters_finest = 15;
  c.allen_cahn = ac;
  c.dim = 7;
  c.params.sigma = 7.0;
  c.params.noise_kind = NoiseKind::hierarchical;
  c.init.type = "fem_coarse";
  c.particles = 50;
  c.seeds = {4};
  const auto res = run_allen_cahn(c);
  const auto dir = temp_dir("ac");
  persist_allen_cahn(res, dir);
  CHECK(std::filesystem::exists(dir / "run_seed4_level2.csv"));
  CHECK(std::filesystem::exists(dir / "run_seed4_level3.csv"));
  CHECK(std::filesystem::exists(dir / "field_seed4_level3.csv"));

  // field CSV covers both boundary nodes
  std::ifstream is(dir / "field_seed4_level3.csv");
  std::string line;
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 10);  // header + 9 nodes
}
