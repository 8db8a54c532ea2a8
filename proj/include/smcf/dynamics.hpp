#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "smcf/field.hpp"
#include "smcf/geometry.hpp"
#include "smcf/operators.hpp"

namespace smcf {

enum class ModelForm {
  StratonovichMcf,       ///< du = H v dt + H o dW
  ItoMcf,                ///< du = (1/2 Delta u + 1/2 H v) dt + H dW
  ItoAnisotropic,        ///< du = (Delta u - 1/2 w^T D^2u w) dt + H dW
  Regularized,           ///< adds eps Delta u - eta Delta^{2K} u to the anisotropic form
  RegularizedTruncated,  ///< Regularized with the Hessian truncated entrywise
  RhoVariant,            ///< du = (rho/2 Delta u + (1 - rho/2) H v) dt + sqrt(rho) H dW
};

std::string_view to_string(ModelForm f);
std::optional<ModelForm> parse_model_form(std::string_view s);

struct ModelParams {
  ModelForm form = ModelForm::ItoMcf;
  double eps = 0.1;
  double eta = 1e-12;
  int big_k = 3;
  double R = 1000.0;
  double rho = 1.0;

  /// Throws ConfigError when the parameters are outside the admissible ranges
  /// of the selected form.
  void validate() const;
  bool is_stratonovich() const { return form == ModelForm::StratonovichMcf; }
  bool has_truncation() const { return form == ModelForm::RegularizedTruncated; }
  double noise_scale() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Smooth cutoff: 1 on |xi| <= R/2, 0 on |xi| >= R, quintic smoothstep
/// 1 - s(2|xi|/R - 1) in between, s(x) = 6x^5 - 15x^4 + 10x^3.
double truncation_weight(double xi, double R);

/// Entrywise a -> theta(a) * a. Entries with |a| <= R/2 pass through bit-identically.
SymTensorField truncate_hessian(const SymTensorField& hess, double R);

/// Full drift field of the form (the Stratonovich drift H v for StratonovichMcf).
ScalarField drift(const ScalarField& u, const ModelParams& model, Method method, SpectralWorkspace& ws);
ScalarField drift(const GeometryBundle& b, const ScalarField& u, const ModelParams& model, SpectralWorkspace& ws);

/// Drift of the Ito form equivalent to the model (StratonovichMcf maps to ItoMcf).
ScalarField ito_drift(const GeometryBundle& b, const ScalarField& u, const ModelParams& model, SpectralWorkspace& ws);

/// sqrt(rho) * H(grad u).
ScalarField diffusion(const ScalarField& u, const ModelParams& model, Method method, SpectralWorkspace& ws);
ScalarField diffusion(const GeometryBundle& b, const ModelParams& model);

/// Linear part treated implicitly by the IMEX scheme.
LinearPart implicit_part(const ModelParams& model);

/// Explicit remainder N(u) = drift(u) - A u, assembled directly (not by
/// subtraction) so that bit-level parameter degenerations hold.
ScalarField explicit_part(const GeometryBundle& b, const ModelParams& model);

struct PathState {
  ScalarField u;
  std::int64_t step = 0;
  double dt = 0.0;
  bool tau_triggered = false;
  double tau_time = 0.0;

  double t() const { return static_cast<double>(step) * dt; }
};

/// Updates the stopping-time flag: triggers the first time ||D^2u||_inf >= R/2.
/// Once triggered it stays triggered.
void monitor_tau_R(PathState& state, double hess_linf, double R);

/// What one step actually applied, for exact bookkeeping:
/// u+ - u = dt * applied_drift + applied_noise * dW in the mean.
struct StepInfo {
  double applied_drift_mean = 0.0;  ///< <drift-as-applied, 1>
  double applied_noise_mean = 0.0;  ///< <noise coefficient as applied, 1>
};

/// Time stepper owning its spectral workspace.
class Stepper {
 public:
  Stepper(GridSpec grid, Method method, ModelParams model, double dt, int filter_order = 0);

  /// Euler-Maruyama with the linear part implicit:
  /// u+ = (Id - dt A)^{-1} (u + dt N(u) + g(u) dW). Ito forms only.
  /// `pre`, if given, must be the geometry bundle of state.u.
  StepInfo em_imex(PathState& state, double dW, const GeometryBundle* pre = nullptr);

  /// Heun predictor-corrector for the Stratonovich form.
  StepInfo heun_strat(PathState& state, double dW, const GeometryBundle* pre = nullptr);

  SpectralWorkspace& workspace() { return ws_; }
  const ModelParams& model() const { return model_; }
  Method method() const { return method_; }
  double dt() const { return dt_; }
  /// Symbol of the implicit linear part A.
  const std::vector<double>& implicit_symbol() const { return a_symbol_; }

 private:
  void finish(PathState& state, ScalarField next);

  SpectralWorkspace ws_;
  Method method_;
  ModelParams model_;
  double dt_;
  int filter_order_;
  std::vector<double> a_symbol_;
};

}  // namespace smcf
