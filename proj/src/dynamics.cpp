#include "smcf/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "smcf/errors.hpp"

namespace smcf {

std::string_view to_string(ModelForm f) {
  switch (f) {
    case ModelForm::StratonovichMcf: return "stratonovich_mcf";
    case ModelForm::ItoMcf: return "ito_mcf";
    case ModelForm::ItoAnisotropic: return "ito_anisotropic";
    case ModelForm::Regularized: return "regularized";
    case ModelForm::RegularizedTruncated: return "regularized_truncated";
    case ModelForm::RhoVariant: return "rho_variant";
  }
  return "unknown";
}

std::optional<ModelForm> parse_model_form(std::string_view s) {
  for (ModelForm f : {ModelForm::StratonovichMcf, ModelForm::ItoMcf, ModelForm::ItoAnisotropic,
                      ModelForm::Regularized, ModelForm::RegularizedTruncated, ModelForm::RhoVariant}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

void ModelParams::validate() const {
  const bool regularized = form == ModelForm::Regularized || form == ModelForm::RegularizedTruncated;
  if (regularized) {
    if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("eps must lie in (0,1] for the regularized forms");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0,1]");
    if (big_k < 1) throw ConfigError("K must be >= 1");
  }
  if (form == ModelForm::RegularizedTruncated && !(R > 0.0)) {
    throw ConfigError("R must be positive for the truncated form");
  }
  if (form == ModelForm::RhoVariant && !(rho > 0.0 && rho < 2.0)) {
    throw ConfigError("rho must lie in (0,2): the noise strength must stay below 2 for a uniformly elliptic drift");
  }
}

double ModelParams::noise_scale() const {
  return form == ModelForm::RhoVariant ? std::sqrt(rho) : 1.0;
}

double truncation_weight(double xi, double R) {
  const double a = std::abs(xi);
  if (a <= 0.5 * R) return 1.0;
  if (a >= R) return 0.0;
  const double x = 2.0 * a / R - 1.0;
  const double s = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  return 1.0 - s;
}

SymTensorField truncate_hessian(const SymTensorField& hess, double R) {
  auto cut = [R](const ScalarField& in) {
    ScalarField out = in;
    for (double& a : out.values()) {
      if (std::abs(a) > 0.5 * R) a *= truncation_weight(a, R);
    }
    return out;
  };
  return {cut(hess.xx), cut(hess.xy), cut(hess.yy)};
}

namespace {

ScalarField laplacian_of(const GeometryBundle& b) { return b.hess.xx + b.hess.yy; }

ScalarField truncated_form(const GeometryBundle& b, const ModelParams& model) {
  if (model.has_truncation()) return normal_hessian_form(b.w(), truncate_hessian(b.hess, model.R));
  return normal_hessian_form(b);
}

// y = a*x + c*z, elementwise.
ScalarField axpby(double a, const ScalarField& x, double c, const ScalarField& z) {
  ScalarField out(x.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * x[k] + c * z[k];
  return out;
}

}  // namespace

ScalarField drift(const GeometryBundle& b, const ScalarField& u, const ModelParams& model, SpectralWorkspace& ws) {
  switch (model.form) {
    case ModelForm::StratonovichMcf:
      return mcf_operator(b);
    case ModelForm::ItoMcf:
      return axpby(0.5, laplacian_of(b), 0.5, mcf_operator(b));
    case ModelForm::RhoVariant:
      return axpby(0.5 * model.rho, laplacian_of(b), 1.0 - 0.5 * model.rho, mcf_operator(b));
    case ModelForm::ItoAnisotropic:
      return axpby(1.0, laplacian_of(b), -0.5, normal_hessian_form(b));
    case ModelForm::Regularized:
    case ModelForm::RegularizedTruncated: {
      ScalarField base = axpby(1.0 + model.eps, laplacian_of(b), -0.5, truncated_form(b, model));
      if (model.eta == 0.0) return base;
      const ScalarField poly = ws.apply_symbol(u, ws.polyharmonic_symbol(model.big_k));
      for (std::size_t k = 0; k < base.size(); ++k) base[k] -= model.eta * poly[k];
      return base;
    }
  }
  throw std::logic_error("drift: unknown form");
}

ScalarField drift(const ScalarField& u, const ModelParams& model, Method method, SpectralWorkspace& ws) {
  return drift(geometry_bundle(u, method, ws, false), u, model, ws);
}

ScalarField ito_drift(const GeometryBundle& b, const ScalarField& u, const ModelParams& model, SpectralWorkspace& ws) {
  if (model.is_stratonovich()) {
    ModelParams ito = model;
    ito.form = ModelForm::ItoMcf;
    return drift(b, u, ito, ws);
  }
  return drift(b, u, model, ws);
}

ScalarField diffusion(const GeometryBundle& b, const ModelParams& model) {
  const double s = model.noise_scale();
  if (s == 1.0) return b.H();
  return s * b.H();
}

ScalarField diffusion(const ScalarField& u, const ModelParams& model, Method method, SpectralWorkspace& ws) {
  return diffusion(geometry_bundle(u, method, ws, false), model);
}

LinearPart implicit_part(const ModelParams& model) {
  switch (model.form) {
    case ModelForm::ItoMcf: return {0.5, 0.0, 1};
    case ModelForm::RhoVariant: return {0.5 * model.rho, 0.0, 1};
    case ModelForm::ItoAnisotropic: return {1.0, 0.0, 1};
    case ModelForm::Regularized:
    case ModelForm::RegularizedTruncated: return {1.0 + model.eps, model.eta, model.big_k};
    case ModelForm::StratonovichMcf: break;
  }
  throw std::invalid_argument("the Stratonovich form has no Ito IMEX split; use the Heun stepper");
}

ScalarField explicit_part(const GeometryBundle& b, const ModelParams& model) {
  switch (model.form) {
    case ModelForm::ItoMcf: return 0.5 * mcf_operator(b);
    case ModelForm::RhoVariant: return (1.0 - 0.5 * model.rho) * mcf_operator(b);
    case ModelForm::ItoAnisotropic:
    case ModelForm::Regularized:
    case ModelForm::RegularizedTruncated: return -0.5 * truncated_form(b, model);
    case ModelForm::StratonovichMcf: break;
  }
  throw std::invalid_argument("the Stratonovich form has no Ito IMEX split; use the Heun stepper");
}

void monitor_tau_R(PathState& state, double hess_linf, double R) {
  if (!state.tau_triggered && hess_linf >= 0.5 * R) {
    state.tau_triggered = true;
    state.tau_time = state.t();
  }
}

Stepper::Stepper(GridSpec grid, Method method, ModelParams model, double dt, int filter_order)
    : ws_(grid), method_(method), model_(model), dt_(dt), filter_order_(filter_order) {
  if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
  model_.validate();
  if (!model_.is_stratonovich()) a_symbol_ = linear_symbol(implicit_part(model_), method_, ws_);
}

void Stepper::finish(PathState& state, ScalarField next) {
  if (filter_order_ > 0) next = ws_.filter(next, filter_order_);
  if (const auto idx = first_non_finite(next)) {
    std::ostringstream msg;
    msg << "non-finite field after step " << state.step << " at (" << *idx / next.n() << ", "
        << *idx % next.n() << ")";
    throw NonFiniteError(msg.str(), *idx, state.step);
  }
  state.u = std::move(next);
  ++state.step;
}

StepInfo Stepper::em_imex(PathState& state, double dW, const GeometryBundle* pre) {
  if (model_.is_stratonovich()) {
    throw std::invalid_argument("em_imex: the Stratonovich drift cannot be used with an Ito stepper");
  }
  std::optional<GeometryBundle> local;
  if (pre == nullptr) {
    local = geometry_bundle(state.u, method_, ws_, false);
    pre = &*local;
  }
  const ScalarField n_part = explicit_part(*pre, model_);
  const ScalarField g = diffusion(*pre, model_);
  ScalarField rhs(state.u.grid());
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = state.u[k] + dt_ * n_part[k] + g[k] * dW;
  StepInfo info{integrate(n_part), integrate(g)};
  finish(state, resolvent_apply(rhs, dt_, a_symbol_, ws_));
  return info;
}

StepInfo Stepper::heun_strat(PathState& state, double dW, const GeometryBundle* pre) {
  if (!model_.is_stratonovich()) {
    throw std::invalid_argument("heun_strat: requires the Stratonovich form");
  }
  std::optional<GeometryBundle> local;
  if (pre == nullptr) {
    local = geometry_bundle(state.u, method_, ws_, false);
    pre = &*local;
  }
  const ScalarField a0 = mcf_operator(*pre);
  const ScalarField g0 = diffusion(*pre, model_);
  ScalarField predictor(state.u.grid());
  for (std::size_t k = 0; k < predictor.size(); ++k) predictor[k] = state.u[k] + dt_ * a0[k] + g0[k] * dW;
  require_finite(predictor, "heun_strat predictor");
  const GeometryBundle bp = geometry_bundle(predictor, method_, ws_, false);
  const ScalarField a1 = mcf_operator(bp);
  const ScalarField g1 = diffusion(bp, model_);
  ScalarField next(state.u.grid());
  ScalarField a_avg(state.u.grid());
  ScalarField g_avg(state.u.grid());
  for (std::size_t k = 0; k < next.size(); ++k) {
    a_avg[k] = 0.5 * (a0[k] + a1[k]);
    g_avg[k] = 0.5 * (g0[k] + g1[k]);
    next[k] = state.u[k] + dt_ * a_avg[k] + g_avg[k] * dW;
  }
  StepInfo info{integrate(a_avg), integrate(g_avg)};
  finish(state, std::move(next));
  return info;
}

}  // namespace smcf
