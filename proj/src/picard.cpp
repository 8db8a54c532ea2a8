#include "smcf/picard.hpp"

#include <cmath>
#include <stdexcept>

namespace smcf {

PicardReport mild_picard_iterate(const ScalarField& u0, const NoisePath& noise, const ModelParams& model,
                                 int iterations, Method method) {
  if (model.form != ModelForm::RegularizedTruncated) {
    throw std::invalid_argument("mild_picard_iterate: requires the regularized truncated form");
  }
  model.validate();
  if (iterations < 1) throw std::invalid_argument("mild_picard_iterate: iterations must be >= 1");

  SpectralWorkspace ws(u0.grid());
  const double dt = noise.dt();
  const std::size_t steps = noise.steps();
  const std::vector<double> a_symbol = linear_symbol(implicit_part(model), method, ws);
  std::vector<double> one_step(a_symbol.size());
  for (std::size_t i = 0; i < a_symbol.size(); ++i) one_step[i] = std::exp(dt * a_symbol[i]);

  std::vector<ScalarField> current(steps + 1, u0);
  PicardReport report;
  int above_one = 0;
  for (int it = 0; it < iterations; ++it) {
    // Sum_{j<=m} S(t_{m+1} - t_j)[...] = S(dt) (K u(t_m) + [...]_m).
    std::vector<ScalarField> next;
    next.reserve(steps + 1);
    next.push_back(u0);
    for (std::size_t m = 0; m < steps; ++m) {
      const GeometryBundle b = geometry_bundle(current[m], method, ws, false);
      const ScalarField nonlinear = explicit_part(b, model);
      const ScalarField g = diffusion(b, model);
      const double dw = noise.increment(m);
      ScalarField x = next.back();
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += dt * nonlinear[k] + g[k] * dw;
      next.push_back(ws.apply_symbol(x, one_step));
    }
    double d = 0.0;
    for (std::size_t m = 0; m <= steps; ++m) d = std::max(d, std::sqrt(l2_norm_sq(next[m] - current[m])));
    report.distances.push_back(d);
    if (report.distances.size() >= 2) {
      const double prev = report.distances[report.distances.size() - 2];
      const double ratio = prev > 0.0 ? d / prev : 0.0;
      report.ratios.push_back(ratio);
      above_one = ratio > 1.0 ? above_one + 1 : 0;
      if (above_one >= 3) report.diverged = true;
    }
    current = std::move(next);
  }
  report.trajectory = std::move(current);
  return report;
}

}  // namespace smcf
