#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cbo/bench/config.hpp"
#include "cbo/bench/experiment.hpp"
#include "cbo/bench/persist.hpp"
#include "cbo/bench/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeAbort = 2;

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw cbo::bench::ConfigError("cannot read config file: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path resolve_output(const cbo::bench::ExperimentConfig& config,
                                     const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  if (!config.output.empty()) return config.output;
  if (const char* env = std::getenv("CBO_OUT_DIR")) return env;
  return "cbo-out";
}

void print_aggregate(const cbo::bench::Aggregate& agg) {
  std::printf("runs: %ld  metric: %s  mean: %.6g  median: %.6g", agg.runs, agg.metric.c_str(),
              agg.mean_final, agg.median_final);
  if (agg.success_rate)
    std::printf("  success: %.0f/%ld", *agg.success_rate * agg.runs, agg.runs);
  std::printf("\n");
}

int do_run(cbo::bench::ExperimentConfig config, const std::string& out_flag) {
  const auto dir = resolve_output(config, out_flag);
  if (config.objective == "allen_cahn") {
    auto result = cbo::bench::run_allen_cahn(config);
    for (const auto& r : result.runs)
      std::printf("seed %llu: final best energy %.6g\n",
                  static_cast<unsigned long long>(r.seed), r.final_best_energy);
    print_aggregate(result.aggregate);
    const auto summary = cbo::bench::persist_allen_cahn(result, dir);
    std::printf("wrote %s\n", summary.string().c_str());
    return kExitOk;
  }
  auto result = cbo::bench::run_experiment(config);
  for (const auto& r : result.runs)
    std::printf("seed %llu: final residual %.6g%s\n", static_cast<unsigned long long>(r.seed),
                r.final_metric, r.success ? " (success)" : "");
  print_aggregate(result.aggregate);
  const auto summary = cbo::bench::persist_experiment(result, dir);
  std::printf("wrote %s\n", summary.string().c_str());
  return kExitOk;
}

int do_sweep(cbo::bench::ExperimentConfig config, const std::string& out_flag) {
  if (!config.sweep)
    throw cbo::bench::ConfigError("sweep: config must carry a sweep block");
  const auto dir = resolve_output(config, out_flag);
  auto result = cbo::bench::run_sweep(config, *config.sweep);
  long converged = 0;
  for (double v : result.ln_final)
    if (v < result.ln_initial) ++converged;
  std::printf("%zu x %zu cells, %ld below the initial residual (contour %.4g)\n",
              result.lambdas.size(), result.sigmas.size(), converged, result.ln_initial);
  const auto summary = cbo::bench::persist_sweep(result, dir);
  std::printf("wrote %s\n", summary.string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained consensus-based optimization benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", out_dir, "output directory (default: config, $CBO_OUT_DIR, ./cbo-out)");
    cmd->add_option("--threads", threads, "worker threads (0 = runtime default)");
  };

  auto* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
  add_common(run_cmd, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "run a lambda/sigma sweep from a config file");
  add_common(sweep_cmd, true);
  auto* ac_cmd = app.add_subcommand("allen-cahn", "run the multigrid energy-minimization pipeline");
  add_common(ac_cmd, true);

  auto* preset_cmd = app.add_subcommand("preset", "run a named experiment preset");
  std::string preset_name, scale_name = "desk", emit_path;
  long seeds_override = 0;
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--scale", scale_name, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
  preset_cmd->add_option("--seeds", seeds_override, "override the number of seeds");
  preset_cmd->add_option("--emit-config", emit_path, "write the preset config JSON and exit");
  add_common(preset_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    cbo::bench::ExperimentConfig config;
    bool is_sweep = false;
    if (preset_cmd->parsed()) {
      const auto scale = scale_name == "paper" ? cbo::bench::Scale::paper : cbo::bench::Scale::desk;
      config = cbo::bench::preset(preset_name, scale);
      if (seeds_override > 0) {
        config.seeds.clear();
        for (long s = 1; s <= seeds_override; ++s)
          config.seeds.push_back(static_cast<std::uint64_t>(s));
      }
      if (!emit_path.empty()) {
        std::ofstream os(emit_path);
        os << cbo::bench::serialize_config(config);
        if (!os) throw std::runtime_error("cannot write " + emit_path);
        std::printf("wrote %s\n", emit_path.c_str());
        return kExitOk;
      }
      is_sweep = config.sweep.has_value();
    } else {
      config = cbo::bench::parse_config(read_file(config_path));
      is_sweep = sweep_cmd->parsed();
    }
    if (threads >= 0) config.threads = threads;

    if (is_sweep) return do_sweep(std::move(config), out_dir);
    return do_run(std::move(config), out_dir);
  } catch (const cbo::bench::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitRuntimeAbort;
  }
}
