#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smcf/config.hpp"
#include "smcf/field.hpp"
#include "smcf/spectral.hpp"

namespace smcf {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Pointwise identity residuals (max norms) for one field.
struct IdentityErrors {
  double area_element = 0.0;   ///< H vs (1 - |w|^2)^{-1/2}
  double projection_det = 0.0; ///< det(Id - w (x) w) vs 1/H^2
  double drift_identity = 0.0; ///< 1/2 Delta u + 1/2 H v vs Delta u - 1/2 w^T D^2u w
  double curvature = 0.0;      ///< det Dw vs det D^2u / H^4
};
IdentityErrors geometry_identity_errors(const ScalarField& u, Method method, SpectralWorkspace& ws);

/// Trigonometric polynomial with moderate slopes used for refinement studies.
inline constexpr std::string_view kAnalyticField = "modes:[(1,1,0.1,0),(1,-1,0.1,0.7),(0,1,0.1,0.2)]";

/// L2 norm of det Dw (Central2) - det D^2u / H^4 (Spectral) for an
/// initial-condition spec sampled at n.
double central_curvature_error(std::string_view ic, int n);

/// |int det(Dw) H| for an initial-condition spec sampled at each n.
std::vector<double> gauss_bonnet_residuals(std::string_view ic, const std::vector<int>& ns, Method method);

/// Minimum of log2(e_j / e_{j+1}) over a doubling sequence.
double min_observed_order(const std::vector<double>& errors);

/// max over steps and grid points of |u(t_m) - c - sqrt(rho) W(t_m)| for a
/// flat start u0 = c, with the scheme and form taken from `cfg`.
double flat_exactness_error(const RunConfig& cfg, double c, std::uint64_t seed);

/// |<grad u, F> + <u, div F>| relative to ||u|| ||F||.
double adjointness_error(const ScalarField& u, const ScalarField& fx, const ScalarField& fy, Method method,
                         SpectralWorkspace& ws);

/// The invariant suite behind the `verify` command.
VerifyReport run_verify(int workers = 0);

}  // namespace smcf
