// Command-line front end: run, ensemble, sweep, verify, resume.
//
// Exit codes: 0 success, 1 validation failure, 2 non-finite abort, 3 I/O.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "smcf/config.hpp"
#include "smcf/errors.hpp"
#include "smcf/harness.hpp"
#include "smcf/io.hpp"
#include "smcf/monitors.hpp"
#include "smcf/verify.hpp"

namespace fs = std::filesystem;
using namespace smcf;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNonFinite = 2;
constexpr int kExitIo = 3;

struct AbortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::string& file, const std::string& out_override) {
  RunConfig cfg = parse_config(read_text_file(file));
  if (!out_override.empty()) cfg.output_dir = out_override;
  return cfg;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_terminal(const fs::path& file, const PathResult& p) {
  write_snapshot(file, {p.terminal, static_cast<double>(p.final_step) * p.dt, p.seed,
                        static_cast<std::uint64_t>(p.final_step)});
}

void require_uncensored(const PathResult& p) {
  if (p.censored) throw AbortError(p.censor_reason);
}

// Column-wise mean of the records over uncensored paths.
std::vector<EnergyRecord> mean_series(const EnsembleReport& ens) {
  const auto paths = ens.uncensored();
  if (paths.empty()) return {};
  std::vector<EnergyRecord> out = paths.front()->records;
  const double inv = 1.0 / static_cast<double>(paths.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    EnergyRecord sum{};
    sum.t = out[r].t;
    for (const auto* p : paths) {
      const auto& x = p->records.at(r);
      sum.grad_energy += x.grad_energy;
      sum.area += x.area;
      sum.mc_dissipation += x.mc_dissipation;
      sum.laplace_dissipation += x.laplace_dissipation;
      sum.mass += x.mass;
      sum.gauss_bonnet += x.gauss_bonnet;
      sum.hess_linf += x.hess_linf;
      sum.u_min += x.u_min;
      sum.u_max += x.u_max;
    }
    for (double* f : {&sum.grad_energy, &sum.area, &sum.mc_dissipation, &sum.laplace_dissipation, &sum.mass,
                      &sum.gauss_bonnet, &sum.hess_linf, &sum.u_min, &sum.u_max}) {
      *f *= inv;
    }
    out[r] = sum;
  }
  return out;
}

void write_ensemble(const fs::path& dir, const EnsembleReport& ens) {
  prepare_dir(dir / "snapshots");
  write_series(dir / "ensemble_mean.csv", mean_series(ens));
  std::ostringstream idx;
  idx << "path,seed,censored,tau_triggered,tau_time\n";
  for (std::size_t i = 0; i < ens.paths.size(); ++i) {
    const auto& p = ens.paths[i];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu,%llu,%d,%d,%.16e\n", i, static_cast<unsigned long long>(p.seed),
                  p.censored ? 1 : 0, p.tau_triggered ? 1 : 0, p.tau_time);
    idx << buf;
    char name[32];
    std::snprintf(name, sizeof name, "path_%05zu.snap", i);
    if (!p.censored) write_terminal(dir / "snapshots" / name, p);
  }
  write_text_file(dir / "paths.csv", idx.str());
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("sweep values: bad number '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("sweep values: bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

SweepAxis parse_axis(const std::string& s) {
  for (SweepAxis a : {SweepAxis::Eta, SweepAxis::Epsilon, SweepAxis::R, SweepAxis::Dt, SweepAxis::Resolution,
                      SweepAxis::Rho}) {
    if (to_string(a) == s) return a;
  }
  throw ConfigError("unknown sweep axis '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic mean curvature flow of graphs on the unit torus"};
  app.require_subcommand(1);

  std::string config_file, out_dir, snapshot_file, axis, values;
  long long stop_at_step = -1;
  int threads = 0;
  int sweep_paths = 0;

  auto* run = app.add_subcommand("run", "Run a single path and write its CSV series and terminal snapshot");
  run->add_option("-c,--config", config_file, "Config file")->required();
  run->add_option("-o,--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--stop-at-step", stop_at_step, "Stop after this step (for checkpoint and resume)");

  auto* ens = app.add_subcommand("ensemble", "Run n_paths paths in parallel");
  ens->add_option("-c,--config", config_file, "Config file")->required();
  ens->add_option("-o,--out", out_dir, "Output directory (overrides output_dir)");
  ens->add_option("-j,--threads", threads, "Worker count (default: SMCF_THREADS or all cores)");

  auto* sweep = app.add_subcommand("sweep", "Shared-noise parameter sweep");
  sweep->add_option("-c,--config", config_file, "Base config file")->required();
  sweep->add_option("-o,--out", out_dir, "Output directory (overrides output_dir)");
  sweep->add_option("--axis", axis, "eta, epsilon, R, dt, resolution, or rho")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--paths", sweep_paths, "Paths per value (default: n_paths)");
  sweep->add_option("-j,--threads", threads, "Worker count");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite; exits nonzero on failure");
  verify->add_option("-j,--threads", threads, "Worker count");

  auto* resume = app.add_subcommand("resume", "Continue a run from a snapshot");
  resume->add_option("-c,--config", config_file, "Config file of the interrupted run")->required();
  resume->add_option("-s,--snapshot", snapshot_file, "Snapshot to resume from")->required();
  resume->add_option("-o,--out", out_dir, "Output directory (overrides output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (run->parsed()) {
      const RunConfig cfg = load_config(config_file, out_dir);
      PathOptions opts;
      opts.stop_at_step = stop_at_step;
      const PathResult p = run_path(cfg, path_seed(cfg.base_seed, 0), opts);
      const fs::path dir = prepare_dir(cfg.output_dir);
      write_series(dir / "series.csv", p.records);
      require_uncensored(p);
      write_terminal(dir / "terminal.snap", p);
      std::printf("run: %lld steps, terminal crc %08x\n", static_cast<long long>(p.final_step),
                  payload_crc(p.terminal));
    } else if (ens->parsed()) {
      const RunConfig cfg = load_config(config_file, out_dir);
      const EnsembleReport rep = run_ensemble(cfg, cfg.n_paths, cfg.base_seed, {}, threads);
      write_ensemble(prepare_dir(cfg.output_dir), rep);
      std::printf("ensemble: %zu paths, %zu censored, %.2f s\n", rep.paths.size(), rep.censored, rep.wall_seconds);
      if (rep.censor_fail) throw AbortError("censoring rate above 1%");
    } else if (sweep->parsed()) {
      const RunConfig cfg = load_config(config_file, out_dir);
      SweepPlan plan;
      plan.axis = parse_axis(axis);
      plan.values = parse_values(values);
      plan.base_seed = cfg.base_seed;
      plan.base = cfg;
      plan.paths = sweep_paths > 0 ? sweep_paths : cfg.n_paths;
      const SweepReport rep = run_sweep(plan, threads);
      const fs::path dir = prepare_dir(cfg.output_dir);
      std::ostringstream summary;
      summary << "value,mean_diff_to_next\n";
      for (std::size_t j = 0; j < rep.values.size(); ++j) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", rep.values[j],
                      j < rep.mean_diffs.size() ? rep.mean_diffs[j] : 0.0);
        summary << buf;
        write_ensemble(dir / ("value_" + std::to_string(j)), rep.ensembles[j]);
      }
      write_text_file(dir / "sweep.csv", summary.str());
      std::printf("sweep over %s: successive differences %s\n", to_string(plan.axis).c_str(),
                  rep.strictly_decreasing ? "strictly decreasing" : "not strictly decreasing");
    } else if (verify->parsed()) {
      const VerifyReport rep = run_verify(threads);
      for (const auto& c : rep.checks) {
        std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
      }
      return rep.all_passed() ? 0 : kExitValidation;
    } else if (resume->parsed()) {
      const RunConfig cfg = load_config(config_file, out_dir);
      const FieldSnapshot snap = read_snapshot(snapshot_file);
      if (snap.seed != path_seed(cfg.base_seed, 0)) throw ConfigError("snapshot seed does not match the config");
      PathOptions opts;
      opts.start_field = snap.u;
      opts.start_step = static_cast<std::int64_t>(snap.step);
      const PathResult p = run_path(cfg, snap.seed, opts);
      const fs::path dir = prepare_dir(cfg.output_dir);
      write_series(dir / "series.csv", p.records);
      require_uncensored(p);
      write_terminal(dir / "terminal.snap", p);
      std::printf("resume: steps %lld..%lld, terminal crc %08x\n", static_cast<long long>(p.start_step),
                  static_cast<long long>(p.final_step), payload_crc(p.terminal));
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const NonFiniteError& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return kExitNonFinite;
  } catch (const AbortError& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return kExitNonFinite;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
