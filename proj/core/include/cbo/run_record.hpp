#pragma once

#include <cstdint>
#include <vector>

namespace cbo {

// One diagnostics row per executed iteration plus the initial row.
struct RunRow {
  long iter = 0;
  double time = 0.0;              // iter * dt
  double residual = 0.0;          // (1/N) sum |X^i - x*|^2; NaN without a reference point
  double consensus_energy = 0.0;  // objective at the consensus point
  double best_energy = 0.0;       // running minimum over particle and consensus energies
  double alpha = 0.0;
  double radius = 0.0;            // exploitation-ball radius; NaN when disabled
  std::vector<double> consensus;
};

struct RunRecord {
  std::vector<RunRow> rows;
  std::uint64_t seed = 0;
  long iterations_executed = 0;
  double sigma_effective = 0.0;
  bool theory_admissible = false;  // 2*lambda - sigma^2 > 0 (informational)
  bool drift_overshoot = false;    // lambda * dt > 1
  double wall_seconds = 0.0;
};

}  // namespace cbo
