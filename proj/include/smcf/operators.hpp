#pragma once

#include <vector>

#include "smcf/field.hpp"
#include "smcf/spectral.hpp"

namespace smcf {

// Periodic differential operators. Spectral differentiation zeroes the
// Nyquist row/column for odd derivatives so that gradient and divergence
// stay exactly skew-adjoint. Central2 uses the standard 3-point stencils;
// its Laplacian is the trace of its Hessian by construction.

VectorField gradient(const ScalarField& u, Method method, SpectralWorkspace& ws);

/// Rejects a field whose provenance method differs from `method`.
ScalarField divergence(const VectorField& f, Method method, SpectralWorkspace& ws);

ScalarField laplacian(const ScalarField& u, Method method, SpectralWorkspace& ws);

SymTensorField hessian(const ScalarField& u, Method method, SpectralWorkspace& ws);

/// Gradient and Hessian from one forward transform.
struct Derivatives {
  VectorField grad;
  SymTensorField hess;
};
Derivatives derivatives(const ScalarField& u, Method method, SpectralWorkspace& ws);

/// Linear operator A = lap_coeff * Delta - eta * Delta^{2K}, diagonal in
/// Fourier space.
struct LinearPart {
  double lap_coeff = 1.0;
  double eta = 0.0;
  int big_k = 1;
};

/// Fourier symbol of A on the workspace grid. Central2 substitutes the
/// discrete Laplacian symbol for lambda(k).
std::vector<double> linear_symbol(const LinearPart& a, Method method, const SpectralWorkspace& ws);

/// Applies (Id - dt*A)^{-1} for a precomputed symbol of A.
ScalarField resolvent_apply(const ScalarField& rhs, double dt, const std::vector<double>& a_symbol,
                            SpectralWorkspace& ws);

/// Applies (Id - dt*A)^{-1} with A = (1+eps) Delta - eta Delta^{2K}.
ScalarField implicit_solve(const ScalarField& rhs, double dt, double eps, double eta, int big_k,
                           SpectralWorkspace& ws);

/// Applies A itself (used for residual checks and weak-form bookkeeping).
ScalarField linear_apply(const ScalarField& u, const std::vector<double>& a_symbol, SpectralWorkspace& ws);

/// Applies the semigroup exp(t*A) exactly through its symbol.
ScalarField semigroup_apply(const ScalarField& u, double t, const std::vector<double>& a_symbol,
                            SpectralWorkspace& ws);

}  // namespace smcf
