#include "smcf/harness.hpp"

#include <omp.h>

#include <chrono>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>

#include "smcf/errors.hpp"
#include "smcf/initial_condition.hpp"
#include "smcf/noise.hpp"

namespace smcf {

std::vector<const PathResult*> EnsembleReport::uncensored() const {
  std::vector<const PathResult*> out;
  for (const auto& p : paths) {
    if (!p.censored) out.push_back(&p);
  }
  return out;
}

std::uint64_t path_seed(std::uint64_t base_seed, std::size_t index) { return derive_seed(base_seed, index); }

int worker_count() {
  if (const char* env = std::getenv("SMCF_THREADS")) {
    int v = 0;
    const auto r = std::from_chars(env, env + std::strlen(env), v);
    if (r.ec == std::errc{} && v > 0) return v;
  }
  return omp_get_max_threads();
}

namespace {

void log_state(StepLog& log, const GeometryBundle& b, const ScalarField& u, const ModelParams& model,
               const std::vector<ScalarField>& phis, SpectralWorkspace& ws) {
  log.mass.push_back(integrate(u));
  log.grad_energy.push_back(l2_norm_sq(b.grad));
  log.laplace_dissipation.push_back(l2_norm_sq(b.hess.xx + b.hess.yy));
  ScalarField v2h(u.grid());
  for (std::size_t k = 0; k < v2h.size(); ++k) v2h[k] = b.v()[k] * b.v()[k] * b.H()[k];
  log.mc_dissipation.push_back(integrate(v2h));
  log.area.push_back(integrate(b.H()));
  const ScalarField drift = ito_drift(b, u, model, ws);
  const ScalarField g = diffusion(b, model);
  log.ito_drift_mean.push_back(integrate(drift));
  log.g_mean.push_back(integrate(g));
  for (std::size_t i = 0; i < phis.size(); ++i) {
    log.u_proj[i].push_back(inner(u, phis[i]));
    log.drift_proj[i].push_back(inner(drift, phis[i]));
    log.g_proj[i].push_back(inner(g, phis[i]));
  }
}

}  // namespace

PathResult run_path(const RunConfig& cfg, std::uint64_t seed, const PathOptions& opts) {
  cfg.validate();
  const GridSpec grid = cfg.grid();
  const std::int64_t total = cfg.steps();
  if (opts.start_step < 0 || opts.start_step > total) throw ConfigError("resume step outside [0, steps]");
  const std::int64_t end = opts.stop_at_step >= 0 ? std::min(opts.stop_at_step, total) : total;
  if (end < opts.start_step) throw ConfigError("stop step precedes start step");
  const bool interrupted = end < total;

  PathResult res;
  res.seed = seed;
  res.dt = cfg.dt;
  res.start_step = opts.start_step;
  res.log.u_proj.resize(opts.test_functions.size());
  res.log.drift_proj.resize(opts.test_functions.size());
  res.log.g_proj.resize(opts.test_functions.size());
  for (const auto& phi : opts.test_functions) {
    if (!(phi.grid() == grid)) throw ConfigError("test function grid differs from the run grid");
  }

  std::optional<NoisePath> noise;
  if (cfg.noise) noise.emplace(seed, cfg.dt, static_cast<std::size_t>(total), opts.noise_level);

  Stepper stepper(grid, cfg.method, cfg.model, cfg.dt, cfg.filter_order);
  SpectralWorkspace& ws = stepper.workspace();
  PathState state{opts.start_field ? *opts.start_field : make_initial_field(cfg.initial_condition, grid),
                  opts.start_step, cfg.dt};
  if (!(state.u.grid() == grid)) throw ConfigError("start field grid differs from the run grid");

  try {
    for (std::int64_t m = opts.start_step;; ++m) {
      const bool last = m == end;
      bool is_record = (m % cfg.record_stride == 0 || m == total) && !(last && interrupted);
      const GeometryBundle b = geometry_bundle(state.u, cfg.method, ws, is_record);
      log_state(res.log, b, state.u, cfg.model, opts.test_functions, ws);
      monitor_tau_R(state, linf_norm(b.hess), cfg.model.R);
      const bool stop_tau = cfg.stop_at_tau && state.tau_triggered;
      if (is_record) {
        res.records.push_back(record_from_bundle(b, state.u, state.t()));
        res.record_steps.push_back(m);
      } else if (stop_tau) {
        res.records.push_back(record(state.u, state.t(), cfg.method, ws));
        res.record_steps.push_back(m);
      }
      if (last || stop_tau) break;

      const double dW = noise ? noise->increment(static_cast<std::size_t>(m)) : 0.0;
      const StepInfo info = cfg.scheme == Scheme::EmImex ? stepper.em_imex(state, dW, &b)
                                                         : stepper.heun_strat(state, dW, &b);
      res.log.applied_drift_mean.push_back(info.applied_drift_mean);
      res.log.applied_noise_mean.push_back(info.applied_noise_mean);
      res.log.dW.push_back(dW);
    }
  } catch (const NonFiniteError& e) {
    res.censored = true;
    res.censor_reason = e.what();
  }
  res.final_step = state.step;
  res.tau_triggered = state.tau_triggered;
  res.tau_time = state.tau_time;
  if (opts.keep_terminal) res.terminal = std::move(state.u);
  return res;
}

namespace {

EnsembleReport make_report(const RunConfig& cfg, const PathOptions& opts, std::vector<PathResult> paths,
                           double seconds) {
  EnsembleReport rep;
  rep.config = cfg;
  rep.options = opts;
  rep.paths = std::move(paths);
  for (const auto& p : rep.paths) {
    if (p.censored) ++rep.censored;
    rep.total_steps += p.final_step - p.start_step;
  }
  rep.censor_fail = static_cast<double>(rep.censored) > 0.01 * static_cast<double>(rep.paths.size());
  rep.wall_seconds = seconds;
  return rep;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EnsembleReport run_ensemble(const RunConfig& cfg, int n_paths, std::uint64_t base_seed, const PathOptions& opts,
                            int workers) {
  cfg.validate();
  if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
  if (workers <= 0) workers = worker_count();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<PathResult> paths(static_cast<std::size_t>(n_paths));
  std::vector<std::exception_ptr> errors(paths.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int i = 0; i < n_paths; ++i) {
    try {
      paths[i] = run_path(cfg, path_seed(base_seed, static_cast<std::size_t>(i)), opts);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return make_report(cfg, opts, std::move(paths), seconds_since(t0));
}

EnsembleReport run_ensemble_serial(const RunConfig& cfg, int n_paths, std::uint64_t base_seed,
                                   const PathOptions& opts) {
  cfg.validate();
  if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<PathResult> paths;
  paths.reserve(static_cast<std::size_t>(n_paths));
  for (int i = 0; i < n_paths; ++i) paths.push_back(run_path(cfg, path_seed(base_seed, static_cast<std::size_t>(i)), opts));
  return make_report(cfg, opts, std::move(paths), seconds_since(t0));
}

}  // namespace smcf
