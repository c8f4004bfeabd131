#include "cbo/bench/persist.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cbo::bench {

using nlohmann::json;

namespace {

constexpr const char* kVersionStamp = "cbo 0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& file) {
  os.flush();
  if (!os) throw std::runtime_error("write failure: " + file.string());
}

json aggregate_json(const Aggregate& agg) {
  json a;
  a["runs"] = agg.runs;
  a["metric"] = agg.metric;
  a["mean_final"] = agg.mean_final;
  a["median_final"] = agg.median_final;
  if (agg.success_threshold) a["success_threshold"] = *agg.success_threshold;
  if (agg.success_rate) a["success_rate"] = *agg.success_rate;
  return a;
}

}  // namespace

void write_run_csv(const std::filesystem::path& file, const RunRecord& record) {
  auto os = open_out(file);
  os << "iter,time,residual,consensus_energy,best_energy,alpha,radius\n";
  for (const auto& r : record.rows) {
    os << r.iter << ',' << fmt(r.time) << ',' << fmt(r.residual) << ','
       << fmt(r.consensus_energy) << ',' << fmt(r.best_energy) << ',' << fmt(r.alpha) << ','
       << fmt(r.radius) << '\n';
  }
  finish(os, file);
}

RunRecord read_run_csv(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot open for reading: " + file.string());
  RunRecord record;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV: " + file.string());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    RunRow row;
    std::istringstream ls(line);
    std::string cell;
    auto next = [&]() -> std::string {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("short CSV row: " + file.string());
      return cell;
    };
    row.iter = std::stol(next());
    row.time = std::stod(next());
    row.residual = std::stod(next());
    row.consensus_energy = std::stod(next());
    row.best_energy = std::stod(next());
    row.alpha = std::stod(next());
    row.radius = std::stod(next());
    record.rows.push_back(std::move(row));
  }
  record.iterations_executed = static_cast<long>(record.rows.size()) - 1;
  return record;
}

void write_field_csv(const std::filesystem::path& file, std::span<const double> interior,
                     int m, double v0, double v1) {
  const long M = 1L << m;
  if (static_cast<long>(interior.size()) != M - 1)
    throw std::invalid_argument("write_field_csv: field length must be 2^m - 1");
  const double h = std::ldexp(1.0, -m);
  auto os = open_out(file);
  os << "coordinate,value\n";
  os << fmt(0.0) << ',' << fmt(v0) << '\n';
  for (long l = 1; l < M; ++l)
    os << fmt(static_cast<double>(l) * h) << ',' << fmt(interior[static_cast<std::size_t>(l - 1)])
       << '\n';
  os << fmt(1.0) << ',' << fmt(v1) << '\n';
  finish(os, file);
}

void write_sweep_csv(const std::filesystem::path& file, const SweepResult& sweep) {
  auto os = open_out(file);
  os << "lambda\\sigma";
  for (double s : sweep.sigmas) os << ',' << fmt(s);
  os << '\n';
  for (std::size_t li = 0; li < sweep.lambdas.size(); ++li) {
    os << fmt(sweep.lambdas[li]);
    for (std::size_t si = 0; si < sweep.sigmas.size(); ++si)
      os << ',' << fmt(sweep.ln_final[li * sweep.sigmas.size() + si]);
    os << '\n';
  }
  finish(os, file);
}

std::filesystem::path persist_experiment(const ExperimentResult& result,
                                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json summary;
  summary["version"] = kVersionStamp;
  summary["config"] = json::parse(serialize_config(result.config));
  summary["aggregate"] = aggregate_json(result.aggregate);
  summary["wall_seconds"] = result.wall_seconds;
  json runs = json::array();
  for (const auto& run : result.runs) {
    const auto name = "run_seed" + std::to_string(run.seed) + ".csv";
    write_run_csv(dir / name, run.record);
    json r;
    r["seed"] = run.seed;
    r["csv"] = name;
    r["rows"] = run.record.rows.size();
    r["final_residual"] = run.final_metric;
    r["success"] = run.success;
    r["theory_admissible"] = run.record.theory_admissible;
    r["sigma_effective"] = run.record.sigma_effective;
    runs.push_back(std::move(r));
  }
  summary["runs"] = runs;
  const auto summary_path = dir / "summary.json";
  auto os = open_out(summary_path);
  os << summary.dump(2) << '\n';
  finish(os, summary_path);
  return summary_path;
}

std::filesystem::path persist_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_sweep_csv(dir / "sweep.csv", result);
  json summary;
  summary["version"] = kVersionStamp;
  summary["config"] = json::parse(serialize_config(result.config));
  summary["csv"] = "sweep.csv";
  // cells below this level improved on the initial residual
  summary["contour_level_ln_initial"] = result.ln_initial;
  summary["lambdas"] = result.lambdas;
  summary["sigmas"] = result.sigmas;
  summary["wall_seconds"] = result.wall_seconds;
  const auto summary_path = dir / "sweep_summary.json";
  auto os = open_out(summary_path);
  os << summary.dump(2) << '\n';
  finish(os, summary_path);
  return summary_path;
}

std::filesystem::path persist_allen_cahn(const AllenCahnResult& result,
                                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& ac = *result.config.allen_cahn;
  json summary;
  summary["version"] = kVersionStamp;
  summary["config"] = json::parse(serialize_config(result.config));
  summary["aggregate"] = aggregate_json(result.aggregate);
  summary["wall_seconds"] = result.wall_seconds;
  json runs = json::array();
  for (const auto& run : result.runs) {
    json r;
    r["seed"] = run.seed;
    r["final_best_energy"] = run.final_best_energy;
    json levels = json::array();
    for (const auto& lvl : run.result.levels) {
      const auto tag = "seed" + std::to_string(run.seed) + "_level" + std::to_string(lvl.level);
      write_run_csv(dir / ("run_" + tag + ".csv"), lvl.record);
      write_field_csv(dir / ("field_" + tag + ".csv"), lvl.consensus_interior, ac.m, ac.v0,
                      ac.v1);
      json l;
      l["level"] = lvl.level;
      l["run_csv"] = "run_" + tag + ".csv";
      l["field_csv"] = "field_" + tag + ".csv";
      l["final_best_energy"] = lvl.record.rows.back().best_energy;
      levels.push_back(std::move(l));
    }
    r["levels"] = levels;
    runs.push_back(std::move(r));
  }
  summary["runs"] = runs;
  const auto summary_path = dir / "summary.json";
  auto os = open_out(summary_path);
  os << summary.dump(2) << '\n';
  finish(os, summary_path);
  return summary_path;
}

}  // namespace cbo::bench
