#include "smcf/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smcf/harness.hpp"

namespace smcf {

EnergyRecord record_from_bundle(const GeometryBundle& b, const ScalarField& u, double t) {
  if (!b.dw) throw std::invalid_argument("record_from_bundle: bundle lacks Dw");
  EnergyRecord r;
  r.t = t;
  r.grad_energy = l2_norm_sq(b.grad);
  r.area = integrate(b.H());
  ScalarField v2h(u.grid());
  for (std::size_t k = 0; k < v2h.size(); ++k) v2h[k] = b.v()[k] * b.v()[k] * b.H()[k];
  r.mc_dissipation = integrate(v2h);
  r.laplace_dissipation = l2_norm_sq(b.hess.xx + b.hess.yy);
  r.mass = integrate(u);
  r.gauss_bonnet = gauss_bonnet_residual(b);
  r.hess_linf = linf_norm(b.hess);
  const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
  r.u_min = *lo;
  r.u_max = *hi;
  return r;
}

EnergyRecord record(const ScalarField& u, double t, Method method, SpectralWorkspace& ws) {
  return record_from_bundle(geometry_bundle(u, method, ws, true), u, t);
}

SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  s.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - s.mean) * (xs[i] - s.mean);
  s.variance = pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
  s.se = std::sqrt(s.variance / static_cast<double>(xs.size()));
  return s;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::InsufficientSample: return "insufficient sample";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMinPaths = 50;

// Deterministic runs need a single path; stochastic ones need kMinPaths.
bool enough_paths(const EnsembleReport& ens, std::size_t used) {
  return used >= (ens.config.noise ? kMinPaths : 1);
}

// Cumulative trapezoid of f on the uniform step grid.
std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double dt) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t m = 1; m < f.size(); ++m) out[m] = out[m - 1] + 0.5 * dt * (f[m - 1] + f[m]);
  return out;
}

// Per-path left-hand side at each record.
std::vector<double> path_lhs(const PathResult& p, double eps, double exponent) {
  const auto& log = p.log;
  std::vector<double> integrand(log.grad_energy.size());
  for (std::size_t m = 0; m < integrand.size(); ++m) {
    const double weight = exponent == 2.0 ? 1.0 : std::pow(log.grad_energy[m], 0.5 * (exponent - 2.0));
    integrand[m] = weight * log.laplace_dissipation[m];
  }
  const auto cum = cumulative_trapezoid(integrand, p.dt);
  const double coeff = 0.5 * exponent * (2.0 * (1.0 + eps) - exponent);
  std::vector<double> out;
  out.reserve(p.records.size());
  for (std::size_t r = 0; r < p.records.size(); ++r) {
    const auto m = static_cast<std::size_t>(p.record_steps[r] - p.start_step);
    const double g = log.grad_energy[m];
    out.push_back((exponent == 2.0 ? g : std::pow(g, 0.5 * exponent)) + coeff * cum[m]);
  }
  return out;
}

void check_exponent(double eps, double p) {
  if (!(p >= 2.0 && p <= 2.0 * (1.0 + eps))) {
    throw std::invalid_argument("gradient inequality needs 2 <= p <= 2(1+eps)");
  }
}

void check_common_grid(const std::vector<const PathResult*>& paths) {
  for (const auto* p : paths) {
    if (p->start_step != 0) throw std::invalid_argument("monitors need paths recorded from t = 0");
    if (p->records.size() != paths.front()->records.size()) {
      throw std::invalid_argument("monitors need records on a common time grid");
    }
  }
}

}  // namespace

std::vector<double> gradient_inequality_lhs(const EnsembleReport& ens, double eps, double p) {
  check_exponent(eps, p);
  const auto paths = ens.uncensored();
  if (paths.empty()) return {};
  check_common_grid(paths);
  const std::size_t nr = paths.front()->records.size();
  std::vector<std::vector<double>> per_record(nr);
  for (const auto* path : paths) {
    const auto lhs = path_lhs(*path, eps, p);
    for (std::size_t r = 0; r < nr; ++r) per_record[r].push_back(lhs[r]);
  }
  std::vector<double> out;
  for (const auto& xs : per_record) out.push_back(sample_stats(xs).mean);
  return out;
}

GradientInequalityVerdict gradient_inequality_check(const EnsembleReport& ens, double eps, double allowance,
                                                    double p) {
  check_exponent(eps, p);
  GradientInequalityVerdict v;
  v.allowance = allowance;
  const auto paths = ens.uncensored();
  v.paths_used = paths.size();
  if (!enough_paths(ens, paths.size()) || ens.censor_fail) {
    v.status = ens.censor_fail ? VerdictStatus::Fail : VerdictStatus::InsufficientSample;
    return v;
  }
  check_common_grid(paths);
  const std::size_t nr = paths.front()->records.size();
  std::vector<std::vector<double>> lhs(nr);
  std::vector<double> rhs;
  for (const auto* path : paths) {
    const auto l = path_lhs(*path, eps, p);
    for (std::size_t r = 0; r < nr; ++r) lhs[r].push_back(l[r]);
    rhs.push_back(std::pow(path->log.grad_energy.front(), 0.5 * p));
  }
  const SampleStats rs = sample_stats(rhs);
  bool ok = true;
  for (std::size_t r = 0; r < nr; ++r) {
    const SampleStats ls = sample_stats(lhs[r]);
    const double se = std::hypot(ls.se, rs.se);
    v.times.push_back(paths.front()->records[r].t);
    v.lhs.push_back(ls.mean);
    v.rhs.push_back(rs.mean);
    v.combined_se.push_back(se);
    const double margin = rs.mean + 3.0 * se + allowance - ls.mean;
    v.margin.push_back(margin);
    if (!(margin >= 0.0)) ok = false;
  }
  v.status = ok ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

double estimate_dt_allowance(const EnsembleReport& fine, const EnsembleReport& coarse, double eps) {
  const auto lf = gradient_inequality_lhs(fine, eps);
  const auto lc = gradient_inequality_lhs(coarse, eps);
  const auto pf = fine.uncensored();
  const auto pc = coarse.uncensored();
  if (pf.empty() || pc.empty()) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    const double t = pf.front()->records[i].t;
    for (std::size_t j = 0; j < lc.size(); ++j) {
      if (std::abs(pc.front()->records[j].t - t) <= 1e-9 * std::max(1.0, t)) {
        worst = std::max(worst, std::abs(lf[i] - lc[j]));
      }
    }
  }
  return worst;
}

AreaVerdict area_inequality_check(const EnsembleReport& ens, double eps) {
  (void)eps;  // the ratio itself carries no eps weight; kept for the sweep interface
  AreaVerdict v;
  const auto paths = ens.uncensored();
  v.paths_used = paths.size();
  if (paths.empty()) return v;
  std::vector<double> sup, diss, a0;
  bool monotone = true;
  for (const auto* p : paths) {
    double s = 0.0;
    for (const auto& r : p->records) s = std::max(s, r.area);
    sup.push_back(s);
    diss.push_back(cumulative_trapezoid(p->log.mc_dissipation, p->dt).back());
    a0.push_back(p->log.area.front());
    for (std::size_t m = 1; m < p->log.area.size(); ++m) {
      if (p->log.area[m] > p->log.area[m - 1] + 1e-12) monotone = false;
    }
  }
  v.sup_area_mean = sample_stats(sup).mean;
  v.dissipation_mean = sample_stats(diss).mean;
  v.initial_area_mean = sample_stats(a0).mean;
  v.ratio = (v.sup_area_mean + 0.5 * v.dissipation_mean) / v.initial_area_mean;
  v.bounded = std::isfinite(v.ratio);
  v.area_monotone = monotone;
  if (ens.censor_fail) {
    v.status = VerdictStatus::Fail;
  } else if (!enough_paths(ens, paths.size())) {
    v.status = VerdictStatus::InsufficientSample;
  } else {
    v.status = v.bounded ? VerdictStatus::Pass : VerdictStatus::Fail;
  }
  return v;
}

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  auto sign = [](double d) { return (d > 0.0) - (d < 0.0); };
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += sign(x[j] - x[i]) * sign(y[j] - y[i]);
  }
  return static_cast<double>(s) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

AreaTrend area_trend(const std::vector<double>& eps, const std::vector<double>& ratios) {
  if (eps.size() != ratios.size()) throw std::invalid_argument("area_trend: length mismatch");
  std::vector<std::size_t> order(eps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] > eps[b]; });
  AreaTrend t;
  std::vector<double> position;
  for (std::size_t k = 0; k < order.size(); ++k) {
    t.eps.push_back(eps[order[k]]);
    t.excess.push_back(ratios[order[k]] - 1.0);
    position.push_back(static_cast<double>(k));
  }
  t.tau = kendall_tau(position, t.excess);
  t.decreasing = eps.size() >= 4 && t.tau < 0.0;
  return t;
}

MassResidual mass_evolution_residual(const PathResult& path, MassResidualMode mode) {
  const auto& log = path.log;
  MassResidual out;
  const std::size_t steps = log.dW.size();
  out.residual.resize(steps);
  for (std::size_t m = 0; m < steps; ++m) {
    const double dmass = log.mass[m + 1] - log.mass[m];
    double predicted = 0.0;
    if (mode == MassResidualMode::SchemeConsistent) {
      predicted = path.dt * log.applied_drift_mean[m] + log.applied_noise_mean[m] * log.dW[m];
    } else {
      predicted = path.dt * log.ito_drift_mean[m + 1] + log.g_mean[m + 1] * log.dW[m];
    }
    out.residual[m] = dmass - predicted;
  }
  double sum = 0.0;
  for (double r : out.residual) {
    out.max_abs = std::max(out.max_abs, std::abs(r));
    sum += std::abs(r);
  }
  if (steps > 0) out.mean_abs = sum / static_cast<double>(steps);
  return out;
}

MartingaleReport martingale_test(const EnsembleReport& ens, std::size_t phi_index,
                                 const std::vector<double>& sample_times) {
  MartingaleReport rep;
  rep.phi_index = phi_index;
  const auto paths = ens.uncensored();
  rep.paths_used = paths.size();
  rep.censored = ens.censored;
  if (paths.empty()) return rep;
  for (const auto* p : paths) {
    if (phi_index >= p->log.u_proj.size()) throw std::invalid_argument("martingale_test: unknown test function");
    if (p->start_step != 0) throw std::invalid_argument("martingale_test: paths must start at t = 0");
  }
  const double dt = paths.front()->dt;
  for (double t : sample_times) {
    const auto m_end = static_cast<std::size_t>(std::llround(t / dt));
    if (m_end >= paths.front()->log.u_proj[phi_index].size()) {
      throw std::invalid_argument("martingale_test: sample time beyond the path horizon");
    }
    std::vector<double> ms, qs, cs, qv, cross, mw;
    for (const auto* p : paths) {
      const auto& up = p->log.u_proj[phi_index];
      const auto& dp = p->log.drift_proj[phi_index];
      const auto& gp = p->log.g_proj[phi_index];
      double drift_int = 0.0, q = 0.0, c = 0.0, w = 0.0;
      for (std::size_t k = 0; k < m_end; ++k) {
        drift_int += dp[k] * dt;
        q += gp[k] * gp[k] * dt;
        c += gp[k] * dt;
        w += p->log.dW[k];
      }
      const double m = up[m_end] - up[0] - drift_int;
      ms.push_back(m);
      qs.push_back(q);
      cs.push_back(c);
      qv.push_back(m * m - q);
      cross.push_back(m * w - c);
      mw.push_back(m * w);
    }
    MartingaleSample s;
    s.t = t;
    s.m = sample_stats(ms);
    s.q_hat = sample_stats(qs).mean;
    s.variance_ratio = s.m.variance / s.q_hat;
    s.qv_residual = sample_stats(qv);
    s.cross_residual = sample_stats(cross);
    s.cross_mean = sample_stats(mw).mean;
    s.c_hat = sample_stats(cs).mean;
    s.mean_ok = std::abs(s.m.mean) <= 3.0 * s.m.se;
    s.qv_ok = std::abs(s.qv_residual.mean) <= 3.0 * s.qv_residual.se;
    s.cross_ok = std::abs(s.cross_residual.mean) <= 3.0 * s.cross_residual.se;
    rep.samples.push_back(s);
  }
  return rep;
}

std::vector<double> integrated_area_process(const std::vector<EnergyRecord>& records, double theta) {
  std::vector<double> out(records.size(), 0.0);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const double a = std::pow(records[r - 1].area, 1.0 + theta);
    const double b = std::pow(records[r].area, 1.0 + theta);
    out[r] = out[r - 1] + 0.5 * (records[r].t - records[r - 1].t) * (a + b);
  }
  return out;
}

}  // namespace smcf
