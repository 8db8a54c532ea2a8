#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smcf/field.hpp"
#include "smcf/geometry.hpp"

namespace smcf {

struct EnergyRecord {
  double t = 0.0;
  double grad_energy = 0.0;          ///< ||grad u||^2_{L2}
  double area = 0.0;                 ///< int H dx
  double mc_dissipation = 0.0;       ///< int |v|^2 H dx
  double laplace_dissipation = 0.0;  ///< ||Delta u||^2_{L2}
  double mass = 0.0;                 ///< int u dx
  double gauss_bonnet = 0.0;         ///< int det(Dw) H dx
  double hess_linf = 0.0;            ///< ||D^2u||_inf
  double u_min = 0.0;
  double u_max = 0.0;

  friend bool operator==(const EnergyRecord&, const EnergyRecord&) = default;
};

/// Builds a record from a bundle that includes Dw.
EnergyRecord record_from_bundle(const GeometryBundle& b, const ScalarField& u, double t);
EnergyRecord record(const ScalarField& u, double t, Method method, SpectralWorkspace& ws);

// Forward declarations; defined in harness.hpp.
struct PathResult;
struct EnsembleReport;

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double se = 0.0;        ///< standard error of the mean
  std::size_t count = 0;
};
SampleStats sample_stats(const std::vector<double>& xs);

enum class VerdictStatus { Pass, Fail, InsufficientSample };
std::string to_string(VerdictStatus s);

/// E||grad u(t)||^p + p(2(1+eps)-p)/2 E int_0^t ||grad u||^{p-2} ||Delta u||^2 ds
///   <= E||grad u_0||^p
/// at every recorded time, with 3 combined standard errors plus `allowance`
/// (the c*dt discretization slack) on the right.
struct GradientInequalityVerdict {
  VerdictStatus status = VerdictStatus::InsufficientSample;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> combined_se;
  std::vector<double> margin;  ///< rhs + 3 se + allowance - lhs (>= 0 passes)
  double allowance = 0.0;
  std::size_t paths_used = 0;
};
GradientInequalityVerdict gradient_inequality_check(const EnsembleReport& ens, double eps, double allowance,
                                                    double p = 2.0);

/// Per-record mean of the gradient-inequality left-hand side, used to
/// estimate the c*dt allowance from a coarser pilot run.
std::vector<double> gradient_inequality_lhs(const EnsembleReport& ens, double eps, double p = 2.0);

/// Richardson-style allowance: max over common record times of
/// |lhs(dt) - lhs(2 dt)|, which estimates the O(dt) bias at dt.
double estimate_dt_allowance(const EnsembleReport& fine, const EnsembleReport& coarse, double eps);

struct AreaVerdict {
  VerdictStatus status = VerdictStatus::InsufficientSample;
  double sup_area_mean = 0.0;    ///< E sup_t int H over the recording grid (a lower bound of the true sup)
  double dissipation_mean = 0.0; ///< E int_0^T int |v|^2 H
  double initial_area_mean = 0.0;
  double ratio = 0.0;            ///< (sup + dissipation/2) / initial
  bool bounded = false;
  /// Every path had nonincreasing recorded area (meaningful for noise-off runs).
  bool area_monotone = false;
  std::size_t paths_used = 0;
};
AreaVerdict area_inequality_check(const EnsembleReport& ens, double eps);

/// Kendall rank correlation (tau-a).
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

struct AreaTrend {
  std::vector<double> eps;     ///< sorted decreasing
  std::vector<double> excess;  ///< ratio - 1, same order
  double tau = 0.0;            ///< Kendall tau of excess against sweep position
  bool decreasing = false;     ///< tau < 0
};
AreaTrend area_trend(const std::vector<double>& eps, const std::vector<double>& ratios);

enum class MassResidualMode {
  /// Uses the drift and noise coefficients exactly as the scheme applied them.
  SchemeConsistent,
  /// Uses the continuum drift and noise coefficient of the form evaluated at
  /// the end of each step; differs from the scheme by O(dt) per step.
  Continuum,
};

struct MassResidual {
  std::vector<double> residual;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};
MassResidual mass_evolution_residual(const PathResult& path, MassResidualMode mode);

struct MartingaleSample {
  double t = 0.0;
  SampleStats m;             ///< M(t)
  double q_hat = 0.0;        ///< mean of int_0^t <g, phi>^2 ds
  double variance_ratio = 0.0;  ///< Var M / q_hat
  SampleStats qv_residual;   ///< M^2 - int <g,phi>^2
  SampleStats cross_residual;  ///< M W - int <g,phi>
  double cross_mean = 0.0;   ///< mean of M W
  double c_hat = 0.0;        ///< mean of int_0^t <g, phi> ds
  bool mean_ok = false;
  bool qv_ok = false;
  bool cross_ok = false;
};

struct MartingaleReport {
  std::size_t phi_index = 0;
  std::vector<MartingaleSample> samples;
  std::size_t paths_used = 0;
  std::size_t censored = 0;
};

/// Martingale checks for the test function registered at `phi_index` of the
/// ensemble's PathOptions. M(t) is assembled from the weak form with the
/// continuum Ito drift integrated by left-endpoint sums.
MartingaleReport martingale_test(const EnsembleReport& ens, std::size_t phi_index,
                                 const std::vector<double>& sample_times);

/// I(t) = int_0^t ||H||_{L1}^{1+theta} ds on the recording grid (trapezoid).
std::vector<double> integrated_area_process(const std::vector<EnergyRecord>& records, double theta);

}  // namespace smcf
