#include "smcf/geometry.hpp"

#include <cmath>

namespace smcf {

GeometryBundle geometry_bundle(const ScalarField& u, Method method, SpectralWorkspace& ws, bool with_dw) {
  Derivatives d = derivatives(u, method, ws);
  const GridSpec g = u.grid();
  ScalarField H(g);
  VectorField w{ScalarField(g), ScalarField(g), method};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double p = d.grad.x[k];
    const double q = d.grad.y[k];
    const double h = std::sqrt(1.0 + p * p + q * q);
    H[k] = h;
    w.x[k] = p / h;
    w.y[k] = q / h;
  }
  ScalarField v = divergence(w, method, ws);
  std::optional<TensorField> dw;
  if (with_dw) {
    VectorField g1 = gradient(w.x, method, ws);
    VectorField g2 = gradient(w.y, method, ws);
    dw = TensorField{std::move(g1.x), std::move(g1.y), std::move(g2.x), std::move(g2.y)};
  }
  return {method, std::move(d.grad), std::move(d.hess), std::move(H), std::move(w), std::move(v), std::move(dw)};
}

ScalarField mcf_operator(const GeometryBundle& b) { return hadamard(b.H(), b.v()); }

ScalarField normal_hessian_form(const VectorField& w, const SymTensorField& hess) {
  ScalarField out(w.x.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double a = w.x[k];
    const double c = w.y[k];
    out[k] = a * a * hess.xx[k] + 2.0 * a * c * hess.xy[k] + c * c * hess.yy[k];
  }
  return out;
}

ScalarField normal_hessian_form(const GeometryBundle& b) { return normal_hessian_form(b.w(), b.hess); }

ScalarField anisotropic_operator(const GeometryBundle& b) {
  ScalarField q = normal_hessian_form(b);
  ScalarField out(q.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (b.hess.xx[k] + b.hess.yy[k]) - q[k];
  return out;
}

ScalarField strat_correction(const GeometryBundle& b) { return 0.5 * normal_hessian_form(b); }

ScalarField gaussian_curvature(const GeometryBundle& b) {
  ScalarField out(b.H().grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double h2 = b.H()[k] * b.H()[k];
    const double det = b.hess.xx[k] * b.hess.yy[k] - b.hess.xy[k] * b.hess.xy[k];
    out[k] = det / (h2 * h2);
  }
  return out;
}

ScalarField det_dw(const GeometryBundle& b) {
  if (!b.dw) throw std::logic_error("det_dw: bundle was built without Dw");
  const TensorField& t = *b.dw;
  ScalarField out(t.xx.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = t.xx[k] * t.yy[k] - t.xy[k] * t.yx[k];
  return out;
}

ScalarField projection_determinant(const GeometryBundle& b) {
  ScalarField out(b.H().grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double a = b.w().x[k];
    const double c = b.w().y[k];
    // det [[1 - a^2, -a c], [-a c, 1 - c^2]]
    out[k] = (1.0 - a * a) * (1.0 - c * c) - (a * c) * (a * c);
  }
  return out;
}

double gauss_bonnet_residual(const GeometryBundle& b) { return integrate(hadamard(det_dw(b), b.H())); }

std::array<double, 2> h_map(double z1, double z2) {
  const double s = z1 * z1 + z2 * z2;
  double f;
  if (std::sqrt(s) < 1e-4) {
    // (1 - sqrt(1 - s)) / (2 s) = 1/4 + s/16 + s^2/32 + O(s^3)
    f = 0.25 + s / 16.0 + s * s / 32.0;
  } else {
    f = (1.0 - std::sqrt(1.0 - s)) / (2.0 * s);
  }
  return {f * z1, f * z2};
}

double h_map_divergence(double z1, double z2) { return 0.5 / std::sqrt(1.0 - (z1 * z1 + z2 * z2)); }

CofactorFluxReport cofactor_flux_check(const GeometryBundle& b, SpectralWorkspace& ws) {
  if (!b.dw) throw std::logic_error("cofactor_flux_check: bundle was built without Dw");
  const TensorField& t = *b.dw;
  const GridSpec g = b.H().grid();
  VectorField flux{ScalarField(g), ScalarField(g), b.method};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto hz = h_map(b.w().x[k], b.w().y[k]);
    // cof(A)^T for A = [[a, b], [c, d]] is [[d, -b], [-c, a]].
    flux.x[k] = t.yy[k] * hz[0] - t.xy[k] * hz[1];
    flux.y[k] = -t.yx[k] * hz[0] + t.xx[k] * hz[1];
  }
  const ScalarField div_flux = divergence(flux, b.method, ws);
  // (div h)(w) = H/2, so the flux integrates half the Gauss-Bonnet density.
  const ScalarField diff = div_flux - 0.5 * hadamard(det_dw(b), b.H());
  return {linf_norm(diff), std::sqrt(l2_norm_sq(diff)), integrate(div_flux), gauss_bonnet_residual(b)};
}

}  // namespace smcf
