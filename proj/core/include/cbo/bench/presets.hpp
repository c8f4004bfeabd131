#pragma once

#include <string>
#include <vector>

#include "cbo/bench/config.hpp"

namespace cbo::bench {

enum class Scale { desk, paper };

// Named experiment presets:
//   fig-sweep        lambda/sigma grid on the Rastrigin box in d = 2
//   fig-middle-scale Rastrigin d = 15 on [0, 11.24]^d with both heuristics
//   fig-large-scale  Rastrigin d = 100 on [0, 11.24]^d with both heuristics
//   fig-allen-cahn   multigrid double-well energy minimization
//   fig-obstacle     the same with obstacle bounds
// `paper` uses the full published parameters; `desk` shrinks N/K/grid sizes to
// laptop scale.
ExperimentConfig preset(const std::string& name, Scale scale);

std::vector<std::string> preset_names();

}  // namespace cbo::bench
