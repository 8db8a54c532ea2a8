#include <doctest.h>

#include <cmath>

#include "smcf/harness.hpp"
#include "smcf/monitors.hpp"

using namespace smcf;

TEST_CASE("sample statistics") {
  const SampleStats s = sample_stats({1, 2, 3, 4});
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 12.0)));
  CHECK(s.count == 4);
  const SampleStats one = sample_stats({7});
  CHECK(one.mean == 7);
  CHECK(one.variance == 0);
}

TEST_CASE("Kendall tau-a") {
  CHECK(kendall_tau({1, 2, 3, 4}, {10, 20, 30, 40}) == 1.0);
  CHECK(kendall_tau({1, 2, 3, 4}, {4, 3, 2, 1}) == -1.0);
  // Concordant 4, discordant 2 out of 6 pairs.
  CHECK(kendall_tau({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(4.0 / 6.0));
  CHECK(kendall_tau({1, 2, 3, 4}, {1, 4, 2, 3}) == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("area trend orders by decreasing eps") {
  const AreaTrend down = area_trend({0.05, 0.4, 0.1, 0.2}, {1.01, 1.4, 1.1, 1.2});
  CHECK(down.eps == std::vector<double>{0.4, 0.2, 0.1, 0.05});
  CHECK(down.excess[0] == doctest::Approx(0.4));
  CHECK(down.tau == -1.0);
  CHECK(down.decreasing);
  const AreaTrend up = area_trend({0.4, 0.2, 0.1, 0.05}, {1.1, 1.2, 1.3, 1.4});
  CHECK_FALSE(up.decreasing);
  CHECK_FALSE(area_trend({0.4, 0.2, 0.1}, {1.3, 1.2, 1.1}).decreasing);
}

TEST_CASE("integrated area process of constant records") {
  std::vector<EnergyRecord> recs(5);
  for (int i = 0; i < 5; ++i) {
    recs[i].t = 0.1 * i;
    recs[i].area = 2.0;
  }
  const auto I = integrated_area_process(recs, 0.5);
  REQUIRE(I.size() == 5);
  CHECK(I[0] == 0.0);
  CHECK(I[4] == doctest::Approx(std::pow(2.0, 1.5) * 0.4));
}

namespace {
RunConfig deterministic_config() {
  RunConfig c;
  c.model.form = ModelForm::Regularized;
  c.noise = false;
  c.n = 16;
  c.dt = 1e-4;
  c.T = 0.02;
  c.record_stride = 20;
  c.initial_condition = "modes:[(1,0,0.3,0),(1,1,0.1,0.4)]";
  return c;
}
}  // namespace

TEST_CASE("noise-free runs satisfy the energy and area inequalities") {
  const RunConfig c = deterministic_config();
  const EnsembleReport ens = run_ensemble_serial(c, 1, 1);
  const auto g = gradient_inequality_check(ens, c.model.eps, 0.0);
  CHECK(g.status == VerdictStatus::Pass);
  CHECK(g.lhs.front() == doctest::Approx(g.rhs.front()));
  for (std::size_t i = 1; i < g.lhs.size(); ++i) CHECK(g.lhs[i] < g.rhs[i]);
  const AreaVerdict a = area_inequality_check(ens, c.model.eps);
  CHECK(a.area_monotone);
  CHECK(a.bounded);
  CHECK(a.sup_area_mean == doctest::Approx(a.initial_area_mean));
}

TEST_CASE("noisy checks demand an adequate sample") {
  RunConfig c = deterministic_config();
  c.noise = true;
  const EnsembleReport ens = run_ensemble_serial(c, 5, 1);
  CHECK(gradient_inequality_check(ens, c.model.eps, 0.0).status == VerdictStatus::InsufficientSample);
  CHECK(to_string(VerdictStatus::InsufficientSample) != to_string(VerdictStatus::Pass));
}

TEST_CASE("mass bookkeeping closes to rounding for the scheme") {
  RunConfig c = deterministic_config();
  c.noise = true;
  for (ModelForm f : {ModelForm::ItoMcf, ModelForm::Regularized, ModelForm::RhoVariant}) {
    c.model.form = f;
    c.model.rho = 0.7;
    const PathResult p = run_path(c, 77);
    const MassResidual r = mass_evolution_residual(p, MassResidualMode::SchemeConsistent);
    CHECK(r.residual.size() == static_cast<std::size_t>(c.steps()));
    CHECK(r.max_abs <= 1e-10);
    // The continuum form differs by the O(dt) scheme error only.
    CHECK(mass_evolution_residual(p, MassResidualMode::Continuum).max_abs < 1e-2);
  }
}

TEST_CASE("martingale of a flat start: M is the noise integral") {
  RunConfig c;
  c.n = 8;
  c.dt = 1e-3;
  c.T = 0.1;
  c.record_stride = 10;
  c.initial_condition = "flat:0.3";
  PathOptions o;
  o.test_functions.push_back(ScalarField(c.grid(), 1.0));
  const EnsembleReport ens = run_ensemble_serial(c, 200, 5, o);
  const MartingaleReport m = martingale_test(ens, 0, {0.05, 0.1});
  REQUIRE(m.samples.size() == 2);
  for (const auto& s : m.samples) {
    CHECK(s.q_hat == doctest::Approx(s.t));
    CHECK(s.c_hat == doctest::Approx(s.t));
    CHECK(s.mean_ok);
  }
  CHECK_THROWS(martingale_test(ens, 1, {0.05}));
}

TEST_CASE("continuum mass residual is at least first order in dt") {
  RunConfig c = deterministic_config();
  c.model.form = ModelForm::ItoMcf;
  c.initial_condition = "modes:[(1,0,0.3,0),(0,1,0.2,0.5)]";
  c.T = 0.0128;
  c.record_stride = 1;
  c.dt = 3.2e-4;
  // Without noise the drift integrates to zero exactly on the torus.
  CHECK(mass_evolution_residual(run_path(c, 1), MassResidualMode::Continuum).max_abs < 1e-15);

  c.noise = true;
  std::vector<double> res;
  for (double dt : {6.4e-4, 3.2e-4, 1.6e-4}) {
    c.dt = dt;
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
      sum += mass_evolution_residual(run_path(c, seed), MassResidualMode::Continuum).max_abs;
    res.push_back(sum / 8);
  }
  CHECK(res[0] / res[1] >= 1.8);
  CHECK(res[1] / res[2] >= 1.8);
}

TEST_CASE("integrated area process: flat start and area bound") {
  RunConfig c = deterministic_config();
  c.initial_condition = "flat:0.2";
  c.noise = true;
  const PathResult flat = run_path(c, 4);
  const auto I = integrated_area_process(flat.records, 0.5);
  for (std::size_t i = 0; i < I.size(); ++i) CHECK(I[i] == doctest::Approx(flat.records[i].t).epsilon(1e-12));

  c = deterministic_config();
  const PathResult p = run_path(c, 4);
  const double theta = 0.5;
  const auto J = integrated_area_process(p.records, theta);
  const double a0 = std::pow(p.records.front().area, 1 + theta);
  for (std::size_t i = 0; i < J.size(); ++i) CHECK(J[i] <= p.records[i].t * a0 + 1e-15);
}
