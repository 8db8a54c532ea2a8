#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace smcf {

/// SplitMix64 output function (Steele, Lea, Flood constants).
std::uint64_t splitmix64(std::uint64_t x);

/// Per-path seed derived from the ensemble base seed and the path index.
/// Counter-based: depends only on its arguments, never on scheduling.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t path_index);

/// Standard normal variate addressed by (seed, stream, index). Box-Muller on
/// counter-hashed uniforms; even indices take the cosine branch, odd the sine.
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Realized scalar Brownian path on a uniform time grid.
///
/// The path at refinement level L is generated at step dt * 2^L from stream 0
/// and then refined L times by Brownian-bridge midpoint insertion (stream l
/// for the l-th refinement). Two paths with the same seed therefore take
/// bit-identical values W(t) at every time both grids contain, and each
/// pair of fine increments sums exactly to its coarse increment. W lives on
/// the fixed-point grid 2^-46 Z (relative perturbation ~1e-12), which is
/// what makes these sums exact; |W| must stay below 64.
class NoisePath {
 public:
  NoisePath(std::uint64_t seed, double dt, std::size_t steps, int level = 0);

  /// The same Brownian path observed on a grid twice as fine.
  NoisePath refined() const;

  std::uint64_t seed() const { return seed_; }
  double dt() const { return dt_; }
  int level() const { return level_; }
  std::size_t steps() const { return increments_.size(); }

  std::span<const double> increments() const { return increments_; }
  double increment(std::size_t m) const { return increments_[m]; }
  /// W(t_m); W(0) = 0.
  double W(std::size_t m) const { return cumulative_[m]; }
  std::span<const double> cumulative() const { return cumulative_; }

 private:
  NoisePath() = default;
  void rebuild_cumulative();

  std::uint64_t seed_ = 0;
  double dt_ = 0.0;
  int level_ = 0;
  std::vector<double> increments_;
  std::vector<double> cumulative_;
};

}  // namespace smcf
