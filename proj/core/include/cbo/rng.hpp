#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cbo {

// Counter-style pseudo-random stream. Each particle owns one stream derived
// from (master seed, stream id), so results do not depend on how particles are
// scheduled across threads. The generator is a SplitMix64 walk with a strongly
// mixed start state; normals come from Box-Muller with a fixed consumption of
// two uniforms per pair.
class RngStream {
 public:
  RngStream() = default;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix(mix(master_seed) ^ mix(stream_id + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform on the open interval (0,1); never returns an endpoint
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0x853c49e6748fea9bULL;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cbo
