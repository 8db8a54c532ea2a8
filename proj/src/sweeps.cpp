#include <algorithm>
#include <cmath>

#include "smcf/errors.hpp"
#include "smcf/harness.hpp"

namespace smcf {

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Eta: return "eta";
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::R: return "R";
    case SweepAxis::Dt: return "dt";
    case SweepAxis::Resolution: return "resolution";
    case SweepAxis::Rho: return "rho";
  }
  return "unknown";
}

void SweepPlan::validate() const {
  if (values.size() < 2) throw ConfigError("a sweep needs at least two values");
  if (paths < 1) throw ConfigError("a sweep needs at least one path per value");
  bool up = true, down = true;
  for (std::size_t j = 1; j < values.size(); ++j) {
    up = up && values[j] > values[j - 1];
    down = down && values[j] < values[j - 1];
  }
  if (!up && !down) throw ConfigError("sweep values must be strictly monotone");
  if (axis == SweepAxis::Dt || axis == SweepAxis::Resolution) {
    for (std::size_t j = 1; j < values.size(); ++j) {
      const double r = values[j] / values[j - 1];
      if (r != 2.0 && r != 0.5) throw ConfigError("dt and resolution sweeps must step by exact factors of 2");
    }
  }
  for (std::size_t j = 0; j < values.size(); ++j) config_for(j).validate();
}

RunConfig SweepPlan::config_for(std::size_t j) const {
  RunConfig c = base;
  const double v = values.at(j);
  switch (axis) {
    case SweepAxis::Eta: c.model.eta = v; break;
    case SweepAxis::Epsilon: c.model.eps = v; break;
    case SweepAxis::R: c.model.R = v; break;
    case SweepAxis::Dt: c.dt = v; break;
    case SweepAxis::Resolution: c.n = static_cast<int>(v); break;
    case SweepAxis::Rho: c.model.rho = v; break;
  }
  return c;
}

int SweepPlan::noise_level_for(std::size_t j) const {
  if (axis != SweepAxis::Dt) return 0;
  const double coarsest = *std::max_element(values.begin(), values.end());
  return static_cast<int>(std::lround(std::log2(coarsest / values.at(j))));
}

namespace {

double l2_distance(const ScalarField& a, const ScalarField& b) {
  if (a.n() == b.n()) return std::sqrt(l2_norm_sq(a - b));
  const ScalarField& fine = a.n() > b.n() ? a : b;
  const ScalarField& coarse = a.n() > b.n() ? b : a;
  return std::sqrt(l2_norm_sq(restrict_to(fine, coarse.grid()) - coarse));
}

}  // namespace

SweepReport run_sweep(const SweepPlan& plan, int workers) {
  plan.validate();
  SweepReport rep;
  rep.axis = plan.axis;
  rep.values = plan.values;
  for (std::size_t j = 0; j < plan.values.size(); ++j) {
    PathOptions opts;
    opts.noise_level = plan.noise_level_for(j);
    rep.ensembles.push_back(run_ensemble(plan.config_for(j), plan.paths, plan.base_seed, opts, workers));
  }
  rep.strictly_decreasing = true;
  for (std::size_t j = 0; j + 1 < rep.ensembles.size(); ++j) {
    const auto& a = rep.ensembles[j].paths;
    const auto& b = rep.ensembles[j + 1].paths;
    std::vector<double> d;
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (a[p].censored || b[p].censored) continue;
      d.push_back(l2_distance(a[p].terminal, b[p].terminal));
    }
    rep.mean_diffs.push_back(sample_stats(d).mean);
    rep.diffs.push_back(std::move(d));
    if (j > 0 && !(rep.mean_diffs[j] < rep.mean_diffs[j - 1])) rep.strictly_decreasing = false;
  }
  return rep;
}

SweepReport sweep_eta(const SweepPlan& plan, int workers) {
  if (plan.axis != SweepAxis::Eta) throw ConfigError("sweep_eta needs an eta axis");
  return run_sweep(plan, workers);
}

EpsilonSweepReport sweep_epsilon(const SweepPlan& plan, int workers) {
  if (plan.axis != SweepAxis::Epsilon) throw ConfigError("sweep_epsilon needs an epsilon axis");
  EpsilonSweepReport rep;
  rep.sweep = run_sweep(plan, workers);
  std::vector<double> ratios;
  rep.gradient_uniform = true;
  for (std::size_t j = 0; j < plan.values.size(); ++j) {
    const auto& ens = rep.sweep.ensembles[j];
    rep.area.push_back(area_inequality_check(ens, plan.values[j]));
    ratios.push_back(rep.area.back().ratio);
    std::vector<double> g0, gt;
    for (const auto* p : ens.uncensored()) {
      g0.push_back(p->log.grad_energy.front());
      gt.push_back(p->log.grad_energy.back());
    }
    const auto s0 = sample_stats(g0);
    const auto st = sample_stats(gt);
    rep.initial_grad_mean.push_back(s0.mean);
    rep.terminal_grad_mean.push_back(st.mean);
    rep.terminal_grad_se.push_back(st.se);
    if (ens.censor_fail || !(st.mean <= s0.mean + 3.0 * std::hypot(st.se, s0.se))) rep.gradient_uniform = false;
  }
  rep.trend = area_trend(plan.values, ratios);
  return rep;
}

TruncationReport sweep_R(const SweepPlan& plan, int workers) {
  if (plan.axis != SweepAxis::R) throw ConfigError("sweep_R needs an R axis");
  plan.validate();
  // Order by increasing R so monotonicity reads naturally.
  std::vector<double> rs = plan.values;
  std::sort(rs.begin(), rs.end());
  TruncationReport rep;
  rep.R = rs;
  std::vector<EnsembleReport> ens;
  for (double r : rs) {
    RunConfig c = plan.base;
    c.model.R = r;
    ens.push_back(run_ensemble(c, plan.paths, plan.base_seed, {}, workers));
    std::size_t trig = 0;
    for (const auto& p : ens.back().paths) trig += p.tau_triggered ? 1 : 0;
    rep.triggered_fraction.push_back(static_cast<double>(trig) / static_cast<double>(plan.paths));
  }
  rep.fraction_nonincreasing = true;
  rep.untriggered_identical = true;
  for (std::size_t j = 1; j < rs.size(); ++j) {
    if (rep.triggered_fraction[j] > rep.triggered_fraction[j - 1]) rep.fraction_nonincreasing = false;
    for (std::size_t p = 0; p < ens[j].paths.size(); ++p) {
      const auto& a = ens[j - 1].paths[p];
      const auto& b = ens[j].paths[p];
      if (!a.tau_triggered && !b.tau_triggered && !a.censored && !b.censored && !(a.terminal == b.terminal)) {
        rep.untriggered_identical = false;
      }
    }
  }
  rep.reaches_zero = rep.triggered_fraction.back() == 0.0;
  return rep;
}

OrderReport self_convergence(const SweepPlan& plan, int workers) {
  if (plan.axis != SweepAxis::Dt && plan.axis != SweepAxis::Resolution) {
    throw ConfigError("self_convergence needs a dt or resolution axis");
  }
  const SweepReport sweep = run_sweep(plan, workers);
  OrderReport rep;
  rep.values = plan.values;
  rep.mean_diffs = sweep.mean_diffs;
  for (std::size_t j = 0; j + 1 < rep.mean_diffs.size(); ++j) {
    rep.orders.push_back(std::log2(rep.mean_diffs[j] / rep.mean_diffs[j + 1]));
  }
  return rep;
}

}  // namespace smcf
