#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "smcf/dynamics.hpp"

namespace smcf {

enum class Scheme { EmImex, HeunStrat };

std::string_view to_string(Scheme s);

/// Largest step <= 0.25 h^2 that divides T evenly; used when a config
/// omits dt.
double default_dt(int n, double T);

/// External form of a run: model, discretization, ensemble, and output
/// options. Text form is "key = value" lines with '#' comments.
struct RunConfig {
  ModelParams model{};
  int n = 32;
  double dt = 0.1 / 410.0;  ///< default_dt(32, 0.1)
  double T = 0.1;
  double theta = 0.5;
  Scheme scheme = Scheme::EmImex;
  Method method = Method::Spectral;
  bool noise = true;
  int filter_order = 0;
  bool stop_at_tau = false;
  int n_paths = 1;
  std::uint64_t base_seed = 1;
  int record_stride = 10;
  std::string initial_condition = "modes:[(1,0,0.5,0)]";
  std::string output_dir = "out";

  /// Number of time steps, T / dt rounded (validated to be integral).
  std::int64_t steps() const;
  GridSpec grid() const { return GridSpec(n); }

  /// Throws ConfigError on any out-of-range or inconsistent value.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
std::string serialize_config(const RunConfig& cfg);

}  // namespace smcf

