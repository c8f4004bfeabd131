#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbo/rng.hpp"

namespace cbo {

// N particle positions in R^d (flat, row-major) plus one RNG stream per
// particle. Positions are plain doubles; streams advance only through the
// owning particle's updates.
class Ensemble {
 public:
  Ensemble(long count, int dim, std::uint64_t master_seed)
      : count_(count), dim_(dim), positions_(), streams_() {
    if (count < 1) throw std::invalid_argument("Ensemble: particle count must be >= 1");
    if (dim < 1) throw std::invalid_argument("Ensemble: dimension must be >= 1");
    positions_.assign(static_cast<std::size_t>(count) * dim, 0.0);
    streams_.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) streams_.emplace_back(master_seed, static_cast<std::uint64_t>(i));
  }

  long size() const { return count_; }
  int dim() const { return dim_; }

  std::span<double> position(long i) {
    return {positions_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> position(long i) const {
    return {positions_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }

  RngStream& stream(long i) { return streams_[static_cast<std::size_t>(i)]; }
  const RngStream& stream(long i) const { return streams_[static_cast<std::size_t>(i)]; }

  std::span<double> flat() { return positions_; }
  std::span<const double> flat() const { return positions_; }

 private:
  long count_;
  int dim_;
  std::vector<double> positions_;
  std::vector<RngStream> streams_;
};

}  // namespace cbo
