#include "smcf/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smcf {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

// W is stored on the fixed-point grid q * Z. Any value of magnitude below
// 2^53 q is then exact, and so are sums and differences of such values,
// which makes bridge refinement split increments without rounding.
constexpr double kQuantum = 0x1.0p-46;
constexpr double kRange = 0x1.0p6;

double quantize(double x) {
  if (!(std::abs(x) < kRange)) throw std::range_error("NoisePath: |W| exceeds the fixed-point range");
  return std::nearbyint(x / kQuantum) * kQuantum;
}

// Uniform in (0, 1], 53 bits.
double to_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t path_index) {
  return splitmix64(splitmix64(base_seed) ^ (path_index * kGolden));
}

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream * kStreamSalt));
  const std::uint64_t pair = index >> 1;
  const double u1 = to_unit(splitmix64(key ^ (2 * pair * kGolden)));
  const double u2 = to_unit(splitmix64(key ^ ((2 * pair + 1) * kGolden)));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1U) ? r * std::sin(angle) : r * std::cos(angle);
}

NoisePath::NoisePath(std::uint64_t seed, double dt, std::size_t steps, int level) {
  if (!(dt > 0.0)) throw std::invalid_argument("NoisePath: dt must be positive");
  if (level < 0) throw std::invalid_argument("NoisePath: level must be >= 0");
  const std::size_t factor = std::size_t{1} << level;
  if (steps % factor != 0) {
    throw std::invalid_argument("NoisePath: step count must be divisible by 2^level");
  }
  const double base_dt = dt * static_cast<double>(factor);
  NoisePath base;
  base.seed_ = seed;
  base.dt_ = base_dt;
  base.level_ = 0;
  const std::size_t coarse = steps / factor;
  const double sd = std::sqrt(base_dt);
  base.cumulative_.assign(coarse + 1, 0.0);
  for (std::size_t m = 0; m < coarse; ++m) {
    base.cumulative_[m + 1] = quantize(base.cumulative_[m] + sd * counter_normal(seed, 0, m));
  }
  base.increments_.resize(coarse);
  for (std::size_t m = 0; m < coarse; ++m) base.increments_[m] = base.cumulative_[m + 1] - base.cumulative_[m];
  for (int l = 0; l < level; ++l) base = base.refined();
  seed_ = seed;
  dt_ = dt;
  level_ = level;
  increments_ = std::move(base.increments_);
  cumulative_ = std::move(base.cumulative_);
}

NoisePath NoisePath::refined() const {
  // Coarse nodes are copied, so W agrees bit for bit at every shared time;
  // each midpoint is the bridge mean plus an independent normal. All values
  // sit on the fixed-point grid, so each pair of fine increments sums to
  // its coarse increment exactly.
  NoisePath out;
  out.seed_ = seed_;
  out.dt_ = 0.5 * dt_;
  out.level_ = level_ + 1;
  const std::size_t coarse = increments_.size();
  out.cumulative_.resize(2 * coarse + 1);
  const double bridge_sd = 0.5 * std::sqrt(dt_);
  for (std::size_t m = 0; m < coarse; ++m) {
    out.cumulative_[2 * m] = cumulative_[m];
    out.cumulative_[2 * m + 1] =
        quantize(0.5 * (cumulative_[m] + cumulative_[m + 1]) +
                 bridge_sd * counter_normal(seed_, static_cast<std::uint64_t>(level_ + 1), m));
  }
  out.cumulative_[2 * coarse] = cumulative_[coarse];
  out.increments_.resize(2 * coarse);
  for (std::size_t k = 0; k < out.increments_.size(); ++k) {
    out.increments_[k] = out.cumulative_[k + 1] - out.cumulative_[k];
  }
  return out;
}

void NoisePath::rebuild_cumulative() {
  cumulative_.assign(increments_.size() + 1, 0.0);
  for (std::size_t m = 0; m < increments_.size(); ++m) cumulative_[m + 1] = cumulative_[m] + increments_[m];
}

}  // namespace smcf
