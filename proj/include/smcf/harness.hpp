#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smcf/config.hpp"
#include "smcf/monitors.hpp"

namespace smcf {

/// Per-state and per-step scalars logged along a path. Arrays indexed by
/// state have steps+1 entries (t_0 .. t_M); per-step arrays have steps.
struct StepLog {
  std::vector<double> mass;
  std::vector<double> grad_energy;
  std::vector<double> laplace_dissipation;
  std::vector<double> mc_dissipation;
  std::vector<double> area;
  std::vector<double> ito_drift_mean;  ///< <continuum Ito drift, 1>
  std::vector<double> g_mean;          ///< <noise coefficient, 1>

  std::vector<double> applied_drift_mean;
  std::vector<double> applied_noise_mean;
  std::vector<double> dW;

  /// Per registered test function phi: <u, phi>, <Ito drift, phi>, <g, phi>.
  std::vector<std::vector<double>> u_proj;
  std::vector<std::vector<double>> drift_proj;
  std::vector<std::vector<double>> g_proj;
};

struct PathOptions {
  /// Test functions for martingale bookkeeping.
  std::vector<ScalarField> test_functions;
  /// Brownian-bridge refinement level of the noise path; the base path
  /// lives on dt * 2^level.
  int noise_level = 0;
  /// Start from a saved state (resume). The noise path is regenerated from
  /// the seed and consumed from `start_step` on.
  std::optional<ScalarField> start_field;
  std::int64_t start_step = 0;
  /// Stop after this many steps in total (simulates an interruption);
  /// negative runs to T.
  std::int64_t stop_at_step = -1;
  bool keep_terminal = true;
};

struct PathResult {
  std::uint64_t seed = 0;
  std::vector<EnergyRecord> records;
  std::vector<std::int64_t> record_steps;
  StepLog log;
  ScalarField terminal{GridSpec(8)};
  std::int64_t start_step = 0;
  std::int64_t final_step = 0;
  double dt = 0.0;
  bool censored = false;
  std::string censor_reason;
  bool tau_triggered = false;
  double tau_time = 0.0;
};

struct EnsembleReport {
  RunConfig config;
  PathOptions options;
  std::vector<PathResult> paths;
  std::size_t censored = 0;
  /// Censoring above 1% fails the configuration.
  bool censor_fail = false;
  double wall_seconds = 0.0;
  std::int64_t total_steps = 0;

  std::vector<const PathResult*> uncensored() const;
};

/// Runs one path. The model, grid, and scheme come from `cfg`; the Brownian
/// path is a pure function of `seed`. Records are taken at every multiple
/// of record_stride and at the final step; an interrupted run (stop_at_step)
/// omits the record at the interruption so that the resumed run supplies it.
PathResult run_path(const RunConfig& cfg, std::uint64_t seed, const PathOptions& opts = {});

/// Seed of path `index` in an ensemble.
std::uint64_t path_seed(std::uint64_t base_seed, std::size_t index);

/// Worker count from SMCF_THREADS, else the OpenMP default.
int worker_count();

/// OpenMP ensemble over path indices; bit-identical to the serial reference
/// for every worker count.
EnsembleReport run_ensemble(const RunConfig& cfg, int n_paths, std::uint64_t base_seed,
                            const PathOptions& opts = {}, int workers = 0);

/// Serial reference used to test the parallel driver.
EnsembleReport run_ensemble_serial(const RunConfig& cfg, int n_paths, std::uint64_t base_seed,
                                   const PathOptions& opts = {});

enum class SweepAxis { Eta, Epsilon, R, Dt, Resolution, Rho };
std::string to_string(SweepAxis a);

struct SweepPlan {
  SweepAxis axis = SweepAxis::Eta;
  std::vector<double> values;
  std::uint64_t base_seed = 1;
  RunConfig base;
  int paths = 50;

  /// Throws ConfigError when values are not strictly monotone or a dt/n
  /// sweep does not refine by exact factors of two.
  void validate() const;
  RunConfig config_for(std::size_t j) const;
  /// Bridge level for value j of a dt sweep (0 for the coarsest).
  int noise_level_for(std::size_t j) const;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::Eta;
  std::vector<double> values;
  std::vector<EnsembleReport> ensembles;
  /// diffs[j][p] = ||u_j(T) - u_{j+1}(T)||_{L2} for path p (compared on the
  /// coarser grid for resolution sweeps).
  std::vector<std::vector<double>> diffs;
  std::vector<double> mean_diffs;
  bool strictly_decreasing = false;
};

SweepReport run_sweep(const SweepPlan& plan, int workers = 0);

struct EpsilonSweepReport {
  SweepReport sweep;
  std::vector<AreaVerdict> area;
  AreaTrend trend;
  /// Terminal E||grad u(T)||^2 <= E||grad u0||^2 + 3 SE at every eps.
  std::vector<double> terminal_grad_mean;
  std::vector<double> terminal_grad_se;
  std::vector<double> initial_grad_mean;
  bool gradient_uniform = false;
};

SweepReport sweep_eta(const SweepPlan& plan, int workers = 0);
EpsilonSweepReport sweep_epsilon(const SweepPlan& plan, int workers = 0);

struct TruncationReport {
  std::vector<double> R;
  std::vector<double> triggered_fraction;
  bool fraction_nonincreasing = false;
  bool reaches_zero = false;
  /// Paths untriggered at two consecutive R values have identical terminals.
  bool untriggered_identical = false;
};
TruncationReport sweep_R(const SweepPlan& plan, int workers = 0);

struct OrderReport {
  std::vector<double> values;
  std::vector<double> mean_diffs;
  /// log2 of successive difference ratios.
  std::vector<double> orders;
};
OrderReport self_convergence(const SweepPlan& plan, int workers = 0);

}  // namespace smcf
