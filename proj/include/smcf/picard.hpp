#pragma once

#include <vector>

#include "smcf/dynamics.hpp"
#include "smcf/noise.hpp"

namespace smcf {

struct PicardReport {
  /// Final iterate sampled on the noise grid, t_0 .. t_M.
  std::vector<ScalarField> trajectory;
  /// d_n = max_m ||u^{n+1}(t_m) - u^n(t_m)||_{L2}, n = 0 .. iterations-1.
  std::vector<double> distances;
  /// d_{n+1} / d_n.
  std::vector<double> ratios;
  /// Ratio exceeded 1 for three consecutive iterations.
  bool diverged = false;
};

/// Picard iteration of the Duhamel map for the truncated regularized form,
///   K u(t) = S(t) u0 - 1/2 int_0^t S(t-s) [w^T Theta^R(D^2u) w](s) ds
///            + int_0^t S(t-s) H(grad u(s)) dW(s),
/// where S is generated by (1+eps) Delta - eta Delta^{2K} and applied exactly
/// through its Fourier symbol. Time integrals use left-endpoint sums on the
/// noise grid, which makes the iteration non-anticipating. The horizon is
/// noise.steps() * noise.dt(). The first iterate starts from u(t) = u0.
PicardReport mild_picard_iterate(const ScalarField& u0, const NoisePath& noise, const ModelParams& model,
                                 int iterations, Method method = Method::Spectral);

}  // namespace smcf
