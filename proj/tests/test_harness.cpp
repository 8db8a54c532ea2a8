#include <doctest.h>

#include <cmath>

#include "smcf/errors.hpp"
#include "smcf/harness.hpp"
#include "smcf/initial_condition.hpp"
#include "smcf/noise.hpp"

using namespace smcf;

namespace {
RunConfig small_config() {
  RunConfig c;
  c.model.form = ModelForm::Regularized;
  c.n = 16;
  c.dt = 2e-4;
  c.T = 0.01;
  c.record_stride = 10;
  c.initial_condition = "random_smooth:3,4";
  return c;
}

void require_same(const PathResult& a, const PathResult& b) {
  CHECK(a.seed == b.seed);
  CHECK(a.records == b.records);
  CHECK(a.terminal == b.terminal);
  CHECK(a.log.mass == b.log.mass);
  CHECK(a.log.dW == b.log.dW);
  CHECK(a.log.applied_drift_mean == b.log.applied_drift_mean);
}
}  // namespace

TEST_CASE("parallel ensembles are bit-identical to the serial reference") {
  const RunConfig c = small_config();
  const EnsembleReport serial = run_ensemble_serial(c, 9, 2024);
  for (int workers : {1, 2, 4}) {
    const EnsembleReport par = run_ensemble(c, 9, 2024, {}, workers);
    REQUIRE(par.paths.size() == serial.paths.size());
    for (std::size_t i = 0; i < par.paths.size(); ++i) require_same(par.paths[i], serial.paths[i]);
  }
}

TEST_CASE("records land on the stride and the final step") {
  RunConfig c = small_config();
  c.record_stride = 15;  // 50 steps: records at 0, 15, 30, 45, 50
  const PathResult p = run_path(c, 1);
  CHECK(p.record_steps == std::vector<std::int64_t>{0, 15, 30, 45, 50});
  CHECK(p.records.back().t == doctest::Approx(0.01));
  CHECK(p.log.mass.size() == 51);
  CHECK(p.log.dW.size() == 50);
  CHECK(p.final_step == 50);
}

TEST_CASE("an interrupted run resumes to the same terminal state") {
  const RunConfig c = small_config();
  const PathResult full = run_path(c, 99);
  PathOptions stop;
  stop.stop_at_step = 23;
  const PathResult head = run_path(c, 99, stop);
  CHECK(head.final_step == 23);
  CHECK(head.record_steps.back() == 20);
  PathOptions resume;
  resume.start_field = head.terminal;
  resume.start_step = head.final_step;
  const PathResult tail = run_path(c, 99, resume);
  CHECK(tail.terminal == full.terminal);
  CHECK(tail.records == std::vector<EnergyRecord>(full.records.begin() + 3, full.records.end()));
}

TEST_CASE("a flat start moves rigidly with the noise") {
  RunConfig c = small_config();
  c.initial_condition = "flat:-0.25";
  const PathResult p = run_path(c, 5);
  const NoisePath noise(5, c.dt, static_cast<std::size_t>(c.steps()));
  double worst = 0.0;
  for (double x : p.terminal.values()) worst = std::max(worst, std::abs(x - (-0.25 + noise.W(noise.steps()))));
  CHECK(worst < 1e-13);
  CHECK(p.records.back().area == doctest::Approx(1.0));
}

TEST_CASE("truncated runs stop at tau when asked") {
  RunConfig c = small_config();
  c.model.form = ModelForm::RegularizedTruncated;
  c.model.R = 30.0;
  c.initial_condition = "modes:[(1,0,0.5,0)]";  // ||D2u|| = 2 pi^2 > R/2
  c.stop_at_tau = true;
  const PathResult p = run_path(c, 1);
  CHECK(p.tau_triggered);
  CHECK(p.tau_time == 0.0);
  CHECK(p.final_step == 0);
  CHECK(p.records.size() == 1);
  c.stop_at_tau = false;
  const PathResult q = run_path(c, 1);
  CHECK(q.tau_triggered);
  CHECK(q.final_step == c.steps());
}

TEST_CASE("a non-finite state censors the path instead of aborting the ensemble") {
  const RunConfig c = small_config();
  PathOptions o;
  o.start_field = make_initial_field(c.initial_condition, c.grid());
  (*o.start_field)(3, 4) = std::nan("");
  const EnsembleReport e = run_ensemble(c, 2, 1, o, 1);
  CHECK(e.censored == 2);
  CHECK(e.censor_fail);
  CHECK(e.uncensored().empty());
  CHECK_FALSE(e.paths[0].censor_reason.empty());
}

TEST_CASE("sweep plans validate their axes") {
  SweepPlan p;
  p.base = small_config();
  p.axis = SweepAxis::Dt;
  p.values = {2e-4, 1e-4, 5e-5};
  CHECK_NOTHROW(p.validate());
  CHECK(p.noise_level_for(0) == 0);
  CHECK(p.noise_level_for(2) == 2);
  p.values = {2e-4, 1.5e-4};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.axis = SweepAxis::Eta;
  p.values = {1e-4, 1e-3, 1e-5};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.values = {1e-4};
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("dt self-convergence on bridge-shared noise") {
  SweepPlan p;
  p.base = small_config();
  p.base.T = 0.0128;
  p.axis = SweepAxis::Dt;
  p.values = {4e-4, 2e-4, 1e-4, 5e-5};
  p.paths = 8;
  p.base_seed = 31;
  const OrderReport r = self_convergence(p);
  REQUIRE(r.orders.size() == 2);
  // Strong order 1/2 at worst; the diffs must shrink.
  for (double o : r.orders) CHECK(o > 0.3);
}
