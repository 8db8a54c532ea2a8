#include "smcf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "smcf/dynamics.hpp"
#include "smcf/geometry.hpp"
#include "smcf/harness.hpp"
#include "smcf/initial_condition.hpp"
#include "smcf/noise.hpp"
#include "smcf/operators.hpp"

namespace smcf {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

IdentityErrors geometry_identity_errors(const ScalarField& u, Method method, SpectralWorkspace& ws) {
  const GeometryBundle b = geometry_bundle(u, method, ws, true);
  IdentityErrors e;
  ScalarField h_from_w(u.grid());
  ScalarField inv_h2(u.grid());
  ScalarField k_hess(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double w2 = b.w().x[k] * b.w().x[k] + b.w().y[k] * b.w().y[k];
    h_from_w[k] = 1.0 / std::sqrt(1.0 - w2);
    inv_h2[k] = 1.0 / (b.H()[k] * b.H()[k]);
  }
  e.area_element = max_abs_diff(b.H(), h_from_w);
  e.projection_det = max_abs_diff(projection_determinant(b), inv_h2);

  ScalarField ito(u.grid());
  ScalarField aniso(u.grid());
  const ScalarField hv = mcf_operator(b);
  const ScalarField q = normal_hessian_form(b);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double lap = b.hess.xx[k] + b.hess.yy[k];
    ito[k] = 0.5 * lap + 0.5 * hv[k];
    aniso[k] = lap - 0.5 * q[k];
  }
  e.drift_identity = max_abs_diff(ito, aniso);
  e.curvature = max_abs_diff(det_dw(b), gaussian_curvature(b));
  return e;
}

double central_curvature_error(std::string_view ic, int n) {
  const GridSpec grid(n);
  SpectralWorkspace ws(grid);
  const ScalarField u = make_initial_field(ic, grid);
  const GeometryBundle exact = geometry_bundle(u, Method::Spectral, ws, false);
  const GeometryBundle c2 = geometry_bundle(u, Method::Central2, ws, true);
  return std::sqrt(l2_norm_sq(det_dw(c2) - gaussian_curvature(exact)));
}

std::vector<double> gauss_bonnet_residuals(std::string_view ic, const std::vector<int>& ns, Method method) {
  std::vector<double> out;
  for (int n : ns) {
    const GridSpec grid(n);
    SpectralWorkspace ws(grid);
    const ScalarField u = make_initial_field(ic, grid);
    out.push_back(std::abs(gauss_bonnet_residual(geometry_bundle(u, method, ws, true))));
  }
  return out;
}

double min_observed_order(const std::vector<double>& errors) {
  double m = INFINITY;
  for (std::size_t j = 0; j + 1 < errors.size(); ++j) m = std::min(m, std::log2(errors[j] / errors[j + 1]));
  return m;
}

double flat_exactness_error(const RunConfig& cfg, double c, std::uint64_t seed) {
  cfg.validate();
  const auto steps = static_cast<std::size_t>(cfg.steps());
  const NoisePath noise(seed, cfg.dt, steps);
  Stepper stepper(cfg.grid(), cfg.method, cfg.model, cfg.dt, cfg.filter_order);
  PathState state{ScalarField(cfg.grid(), c), 0, cfg.dt};
  const double s = cfg.model.noise_scale();
  double worst = 0.0;
  for (std::size_t m = 0; m < steps; ++m) {
    if (cfg.scheme == Scheme::EmImex) {
      stepper.em_imex(state, noise.increment(m));
    } else {
      stepper.heun_strat(state, noise.increment(m));
    }
    const double expected = c + s * noise.W(m + 1);
    for (double x : state.u.values()) worst = std::max(worst, std::abs(x - expected));
  }
  return worst;
}

double adjointness_error(const ScalarField& u, const ScalarField& fx, const ScalarField& fy, Method method,
                         SpectralWorkspace& ws) {
  const VectorField g = gradient(u, method, ws);
  const ScalarField d = divergence(VectorField{fx, fy, method}, method, ws);
  const double lhs = inner(g.x, fx) + inner(g.y, fy);
  const double rhs = -inner(u, d);
  const double scale = std::sqrt(l2_norm_sq(u) * (l2_norm_sq(fx) + l2_norm_sq(fy)));
  return std::abs(lhs - rhs) / std::max(scale, 1e-300);
}

namespace {

CheckResult check_le(std::string name, double value, double threshold) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3e <= %.3e", value, threshold);
  return {std::move(name), value <= threshold, value, threshold, buf};
}

CheckResult check_ge(std::string name, double value, double threshold) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3f >= %.3f", value, threshold);
  return {std::move(name), value >= threshold, value, threshold, buf};
}

}  // namespace

VerifyReport run_verify(int workers) {
  VerifyReport rep;

  // Geometry identities on random smooth data.
  {
    const GridSpec grid(64);
    SpectralWorkspace ws(grid);
    IdentityErrors worst;
    for (int s = 1; s <= 5; ++s) {
      const ScalarField u = make_initial_field("random_smooth:" + std::to_string(s) + ",4", grid);
      const IdentityErrors e = geometry_identity_errors(u, Method::Spectral, ws);
      worst.area_element = std::max(worst.area_element, e.area_element);
      worst.projection_det = std::max(worst.projection_det, e.projection_det);
      worst.drift_identity = std::max(worst.drift_identity, e.drift_identity);
    }
    rep.checks.push_back(check_le("area element from unit normal", worst.area_element, 1e-12));
    rep.checks.push_back(check_le("projection determinant", worst.projection_det, 1e-12));
    rep.checks.push_back(check_le("Ito drift identity", worst.drift_identity, 1e-8));
  }

  const std::string analytic = std::string(kAnalyticField);
  {
    std::vector<double> errs;
    for (int n : {32, 64, 128}) errs.push_back(central_curvature_error("random_smooth:1,4", n));
    rep.checks.push_back(check_ge("curvature identity order (central)", min_observed_order(errs), 1.8));
  }
  rep.checks.push_back(
      check_le("Gauss-Bonnet (spectral)", gauss_bonnet_residuals(analytic, {64}, Method::Spectral).front(), 1e-8));
  rep.checks.push_back(check_ge("Gauss-Bonnet order (central)",
                                min_observed_order(gauss_bonnet_residuals(analytic, {32, 64, 128}, Method::Central2)),
                                1.8));

  // Operator adjointness.
  {
    const GridSpec grid(32);
    SpectralWorkspace ws(grid);
    const ScalarField u = make_initial_field("random_smooth:11,3", grid);
    const ScalarField fx = make_initial_field("random_smooth:12,3", grid);
    const ScalarField fy = make_initial_field("random_smooth:13,3", grid);
    for (Method m : {Method::Spectral, Method::Central2}) {
      rep.checks.push_back(check_le("gradient/divergence adjointness (" + std::string(to_string(m)) + ")",
                                    adjointness_error(u, fx, fy, m, ws), 1e-12));
    }
  }

  // Flat-graph exactness for both steppers.
  {
    RunConfig cfg;
    cfg.n = 8;
    cfg.dt = 1e-4;
    cfg.T = 0.1;
    cfg.model.form = ModelForm::ItoMcf;
    rep.checks.push_back(check_le("flat exactness (em_imex)", flat_exactness_error(cfg, 0.7, 7), 1e-12));
    cfg.model.form = ModelForm::StratonovichMcf;
    cfg.scheme = Scheme::HeunStrat;
    rep.checks.push_back(check_le("flat exactness (heun_strat)", flat_exactness_error(cfg, 0.7, 7), 1e-12));
  }

  // Martingale test on the flat ensemble.
  {
    RunConfig cfg;
    cfg.n = 8;
    cfg.dt = 1e-3;
    cfg.T = 0.1;
    cfg.model.form = ModelForm::ItoMcf;
    cfg.initial_condition = "flat:0.7";
    cfg.record_stride = 100;
    PathOptions opts;
    opts.test_functions.push_back(ScalarField(cfg.grid(), 1.0));
    constexpr int paths = 500;
    const EnsembleReport ens = run_ensemble(cfg, paths, 2024, opts, workers);
    const MartingaleReport mr = martingale_test(ens, 0, {0.025, 0.05, 0.1});
    const double band = 3.0 * std::sqrt(2.0 / paths);
    double worst = 0.0;
    for (const auto& s : mr.samples) worst = std::max(worst, std::abs(s.m.variance / s.t - 1.0));
    rep.checks.push_back(check_le("flat martingale Var M(t)/t - 1", worst, band));
  }
  return rep;
}

}  // namespace smcf
