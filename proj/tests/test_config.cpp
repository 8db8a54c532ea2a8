#include <doctest.h>

#include "smcf/config.hpp"
#include "smcf/errors.hpp"

using namespace smcf;

TEST_CASE("defaults validate and serialize round trip") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(parse_config(serialize_config(c)) == c);

  c.model.form = ModelForm::RegularizedTruncated;
  c.model.eps = 0.05;
  c.model.eta = 3e-7;
  c.model.R = 250;
  c.n = 64;
  c.dt = 5e-5;
  c.T = 0.02;
  c.noise = false;
  c.initial_condition = "modes:[(1,0,0.5,0),(0,2,0.1,1.25)]";
  c.base_seed = 0xFFFFFFFFFFFFULL;
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("parsing accepts comments and whitespace") {
  const RunConfig c = parse_config(
      "# a comment\n"
      "form = rho_variant   # trailing\n"
      "rho=0.5\n"
      "\n"
      "  n = 16\n"
      "dt = 1e-3\n"
      "T = 0.01\n");
  CHECK(c.model.form == ModelForm::RhoVariant);
  CHECK(c.model.rho == 0.5);
  CHECK(c.n == 16);
  CHECK(c.steps() == 10);
}

TEST_CASE("invalid configurations are rejected with ConfigError") {
  const auto bad = [](const char* text) { CHECK_THROWS_AS(parse_config(text), ConfigError); };
  bad("form = rho_variant\nrho = 2.5\n");
  bad("form = rho_variant\nrho = 0\n");
  bad("form = regularized\nK = 2\n");
  bad("form = regularized\neps = 1.5\n");
  bad("form = regularized_truncated\nR = -1\n");
  bad("n = 7\n");
  bad("n = 4\n");
  bad("dt = 0.003\nT = 0.01\n");
  bad("dt = -1\n");
  bad("form = ito_mcf\nscheme = heun_strat\n");
  bad("form = stratonovich_mcf\nscheme = em_imex\n");
  bad("form = nonsense\n");
  bad("colour = blue\n");
  bad("n = 16\nn = 32\n");
  bad("n = sixteen\n");
  bad("noise = maybe\n");
  bad("initial_condition = modes:[(1,0)]\n");
  bad("just a line\n");
  bad("record_stride = 0\n");
}

TEST_CASE("library callers may use low-order hyperviscosity") {
  RunConfig c;
  c.model.form = ModelForm::Regularized;
  c.model.big_k = 1;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("Stratonovich runs pair with the Heun scheme") {
  const RunConfig c = parse_config("form = stratonovich_mcf\nscheme = heun_strat\n");
  CHECK(c.scheme == Scheme::HeunStrat);
  CHECK(c.model.is_stratonovich());
}

TEST_CASE("omitted dt follows the stability proxy and divides T") {
  const RunConfig c = parse_config("n = 32\nT = 0.1\n");
  CHECK(c.dt <= 0.25 / (32.0 * 32.0));
  CHECK(c.steps() == 410);
  CHECK(RunConfig{}.dt == c.dt);
  const RunConfig d = parse_config("n = 16\nT = 0.0625\n");
  CHECK(d.dt == doctest::Approx(0.25 / 256));
  CHECK(d.steps() == 64);
}
