#include "cbo/dynamics.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "parallel.hpp"

namespace cbo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string point_to_string(std::span<const double> x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
    if (i) s += ", ";
    s += buf;
  }
  s += ")";
  return s;
}

}  // namespace

void CboParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("CboParams: lambda must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("CboParams: sigma must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("CboParams: dt must be positive");
  if (iterations < 0) throw std::invalid_argument("CboParams: iteration budget must be >= 0");
  if (noise_kind == NoiseKind::hierarchical) {
    if (noise_coarse_level < 1 || noise_fine_level < noise_coarse_level)
      throw std::invalid_argument("CboParams: hierarchical noise needs 1 <= i <= m");
  }
}

bool theory_admissible(double lambda, double sigma) {
  return 2.0 * lambda - sigma * sigma > 0.0;
}

std::vector<double> gibbs_weights(std::span<const double> energies, double alpha) {
  if (energies.empty()) throw std::invalid_argument("gibbs_weights: empty energy vector");
  if (!(alpha >= 0.0)) throw std::invalid_argument("gibbs_weights: alpha must be >= 0");
  double emin = std::numeric_limits<double>::infinity();
  for (double e : energies) {
    if (!std::isfinite(e)) throw std::invalid_argument("gibbs_weights: non-finite energy");
    emin = std::min(emin, e);
  }
  std::vector<double> w(energies.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    // the min-shifted term is exp(0) = 1, so the sum never underflows
    w[i] = std::exp(-alpha * (energies[i] - emin));
    sum += w[i];
  }
  const double inv = 1.0 / sum;
  for (double& v : w) v *= inv;
  return w;
}

std::vector<double> consensus_point(const Ensemble& ensemble,
                                    std::span<const double> energies, double alpha) {
  if (static_cast<long>(energies.size()) != ensemble.size())
    throw std::invalid_argument("consensus_point: one energy per particle required");
  const auto w = gibbs_weights(energies, alpha);
  std::vector<double> c(ensemble.dim(), 0.0);
  for (long i = 0; i < ensemble.size(); ++i) {
    auto x = ensemble.position(i);
    const double wi = w[static_cast<std::size_t>(i)];
    for (int l = 0; l < ensemble.dim(); ++l) c[l] += wi * x[l];
  }
  return c;
}

double residual(const Ensemble& ensemble, std::span<const double> x_star) {
  if (static_cast<int>(x_star.size()) != ensemble.dim())
    throw std::invalid_argument("residual: dimension mismatch");
  double acc = 0.0;
  for (long i = 0; i < ensemble.size(); ++i) {
    auto x = ensemble.position(i);
    for (std::size_t l = 0; l < x_star.size(); ++l) {
      const double d = x[l] - x_star[l];
      acc += d * d;
    }
  }
  return acc / static_cast<double>(ensemble.size());
}

double planned_horizon(double v0, double eps, double tau, double lambda, double sigma) {
  if (!(v0 > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("planned_horizon: V0 and eps must be positive");
  if (!(tau >= 0.0 && tau < 1.0))
    throw std::invalid_argument("planned_horizon: tau must lie in [0, 1)");
  const double rate = 2.0 * lambda - sigma * sigma;
  if (!(rate > 0.0))
    throw std::domain_error("planned_horizon: outside theory-admissible regime (2*lambda <= sigma^2)");
  if (v0 <= eps) return 0.0;
  return std::log(v0 / eps) / ((1.0 - tau) * rate);
}

void cbo_step(Ensemble& ensemble, std::span<const double> consensus,
              const CboParams& params, const NoiseModel& noise, const Domain& domain,
              const StepOptions& opts) {
  const int d = ensemble.dim();
  if (static_cast<int>(consensus.size()) != d)
    throw std::invalid_argument("cbo_step: consensus dimension mismatch");
  if (domain.dim() != d) throw std::invalid_argument("cbo_step: domain dimension mismatch");

  const double drift = params.lambda * params.dt;
  const double keep = 1.0 - drift;
  std::atomic<long> bad{-1};

  detail::parallel_for(ensemble.size(), opts.threads, [&](long i) {
    auto x = ensemble.position(i);
    std::vector<double> nz(static_cast<std::size_t>(d));
    std::vector<double> scratch(static_cast<std::size_t>(d));
    noise_draw(noise, x, consensus, params.dt, ensemble.stream(i), nz, scratch);
    bool finite = true;
    for (int l = 0; l < d; ++l) {
      const double y = keep * x[l] + drift * consensus[l] + nz[l];
      x[l] = y;
      finite = finite && std::isfinite(y);
    }
    if (!finite) {
      long expect = -1;
      bad.compare_exchange_strong(expect, i);
      return;
    }
    if (opts.ball_radius && opts.ball_before_domain)
      clamp_point_to_ball(x, consensus, *opts.ball_radius);
    domain.project_in_place(x);
    if (opts.ball_radius && !opts.ball_before_domain)
      clamp_point_to_ball(x, consensus, *opts.ball_radius);
  });

  if (bad.load() >= 0)
    throw RunAbort("cbo_step: non-finite update for particle " + std::to_string(bad.load()));
}

RunRecord run(const Objective& objective, const Domain& domain, Ensemble& ensemble,
              const CboParams& params, const HeuristicsConfig& heuristics,
              const RunOptions& opts) {
  params.validate();
  heuristics.validate();
  const int d = ensemble.dim();
  const long n = ensemble.size();
  if (domain.dim() != d) throw std::invalid_argument("run: domain dimension mismatch");
  if (opts.x_star && static_cast<int>(opts.x_star->size()) != d)
    throw std::invalid_argument("run: x_star dimension mismatch");
  if (opts.stop_residual && !opts.x_star)
    throw std::invalid_argument("run: stop_residual requires x_star");
  for (long i = 0; i < n; ++i)
    if (!domain.contains(ensemble.position(i)))
      throw std::invalid_argument("run: initial ensemble is infeasible (particle " +
                                  std::to_string(i) + ")");

  const double sigma_eff = heuristics.boost_S ? boosted_sigma(params.lambda, *heuristics.boost_S)
                                              : params.sigma;
  NoiseModel noise{params.noise_kind, sigma_eff, params.noise_coarse_level,
                   params.noise_fine_level, params.hierarchical_rescale};
  if (noise.kind == NoiseKind::hierarchical &&
      d != (1 << params.noise_fine_level) - 1)
    throw std::invalid_argument("run: hierarchical noise requires dimension 2^m - 1");

  RunRecord record;
  record.sigma_effective = sigma_eff;
  record.theory_admissible = theory_admissible(params.lambda, sigma_eff);
  record.drift_overshoot = params.lambda * params.dt > 1.0;
  if (record.drift_overshoot)
    std::fprintf(stderr, "cbo: warning: lambda*dt = %.3g > 1, drift overshoots the consensus\n",
                 params.lambda * params.dt);

  const auto t0 = std::chrono::steady_clock::now();
  const long K = params.iterations;
  std::vector<double> energies(static_cast<std::size_t>(n));
  double best = std::numeric_limits<double>::infinity();
  record.rows.reserve(static_cast<std::size_t>(K) + 1);

  for (long k = 0;; ++k) {
    const double alpha =
        (K == 0) ? heuristics.alpha0 : alpha_schedule(k, K, heuristics.alpha0, heuristics.alphaK);

    detail::parallel_for(n, opts.threads,
                         [&](long i) { energies[static_cast<std::size_t>(i)] = objective(ensemble.position(i)); });
    for (long i = 0; i < n; ++i) {
      if (!std::isfinite(energies[static_cast<std::size_t>(i)]))
        throw RunAbort("run: objective returned a non-finite value at iteration " +
                       std::to_string(k) + " for particle " + std::to_string(i) + " at " +
                       point_to_string(ensemble.position(i)));
    }

    auto consensus = consensus_point(ensemble, energies, alpha);
    const double consensus_energy = objective(consensus);
    for (double e : energies) best = std::min(best, e);
    if (std::isfinite(consensus_energy)) best = std::min(best, consensus_energy);

    RunRow row;
    row.iter = k;
    row.time = static_cast<double>(k) * params.dt;
    row.residual = opts.x_star ? residual(ensemble, *opts.x_star) : kNaN;
    row.consensus_energy = consensus_energy;
    row.best_energy = best;
    row.alpha = alpha;
    row.radius =
        heuristics.gamma ? exploitation_radius(ensemble, consensus, *heuristics.gamma) : kNaN;
    row.consensus = consensus;
    record.rows.push_back(std::move(row));
    const RunRow& current = record.rows.back();

    if (k == K) break;
    if (opts.stop_residual && current.residual <= *opts.stop_residual) break;
    if (opts.stop_stagnation && k >= opts.stop_stagnation->window) {
      const auto& past = record.rows[static_cast<std::size_t>(k - opts.stop_stagnation->window)];
      double moved2 = 0.0;
      for (int l = 0; l < d; ++l) {
        const double dl = current.consensus[static_cast<std::size_t>(l)] -
                          past.consensus[static_cast<std::size_t>(l)];
        moved2 += dl * dl;
      }
      if (std::sqrt(moved2) <= opts.stop_stagnation->tol) break;
    }

    StepOptions step;
    step.ball_radius = heuristics.gamma ? std::optional<double>(current.radius) : std::nullopt;
    step.ball_before_domain = opts.ball_before_domain;
    step.threads = opts.threads;
    try {
      cbo_step(ensemble, current.consensus, params, noise, domain, step);
    } catch (const RunAbort& e) {
      throw RunAbort(std::string(e.what()) + " (iteration " + std::to_string(k) + ")");
    }
  }

  record.iterations_executed = static_cast<long>(record.rows.size()) - 1;
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

}  // namespace cbo
