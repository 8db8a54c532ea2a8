#pragma once

#include <array>

#include "smcf/field.hpp"
#include "smcf/operators.hpp"

namespace smcf {

/// Geometric quantities of the graph x -> (x, u(x)), all derived from one
/// gradient/Hessian evaluation with a single discretization method.
struct GeometryBundle {
  Method method;
  VectorField grad;
  SymTensorField hess;
  ScalarField area_element;  ///< H = sqrt(1 + |grad u|^2)
  VectorField normal;        ///< w = grad u / H
  ScalarField curvature;     ///< v = div w
  /// D w, only populated when requested (costs four more transforms).
  std::optional<TensorField> dw;

  const ScalarField& H() const { return area_element; }
  const VectorField& w() const { return normal; }
  const ScalarField& v() const { return curvature; }
};

GeometryBundle geometry_bundle(const ScalarField& u, Method method, SpectralWorkspace& ws,
                               bool with_dw = true);

/// H * v, the mean curvature operator in divergence form.
ScalarField mcf_operator(const GeometryBundle& b);

/// w^T D^2u w, the quadratic form in the anisotropic operator.
ScalarField normal_hessian_form(const GeometryBundle& b);
ScalarField normal_hessian_form(const VectorField& w, const SymTensorField& hess);

/// (Id - w (x) w) : D^2u = Delta u - w^T D^2u w.
ScalarField anisotropic_operator(const GeometryBundle& b);

/// Ito-Stratonovich correction 1/2 w^T D^2u w.
ScalarField strat_correction(const GeometryBundle& b);

/// det D^2u / H^4.
ScalarField gaussian_curvature(const GeometryBundle& b);

/// det(Dw) from the four Dw components.
ScalarField det_dw(const GeometryBundle& b);

/// det(Id - w (x) w); equals 1/H^2 pointwise.
ScalarField projection_determinant(const GeometryBundle& b);

/// Integral of det(Dw) * H; zero in the continuum for every periodic graph.
double gauss_bonnet_residual(const GeometryBundle& b);

/// h(z) = (1 - sqrt(1 - |z|^2)) / (2 |z|^2) * z, with a Taylor branch near 0.
std::array<double, 2> h_map(double z1, double z2);

/// Closed form of div_z h(z) = (1/2) (1 - |z|^2)^{-1/2}, i.e. H/2 at z = w.
double h_map_divergence(double z1, double z2);

struct CofactorFluxReport {
  double linf = 0.0;         ///< max |div(cof(Dw)^T h(w)) - (div h)(w) det(Dw)|
  double l2 = 0.0;           ///< L2 norm of the same difference
  double flux_integral = 0.0;  ///< integral of div(cof(Dw)^T h(w)); zero by periodicity
  double gauss_bonnet = 0.0;   ///< integral of det(Dw) H, for comparison
};

/// Independent route to the Gauss-Bonnet cancellation through the
/// divergence-form identity div(cof(Dw)^T h(w)) = det(Dw) H.
CofactorFluxReport cofactor_flux_check(const GeometryBundle& b, SpectralWorkspace& ws);

}  // namespace smcf
