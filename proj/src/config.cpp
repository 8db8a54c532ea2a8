#include "smcf/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "smcf/errors.hpp"
#include "smcf/initial_condition.hpp"

namespace smcf {

std::string_view to_string(Scheme s) { return s == Scheme::EmImex ? "em_imex" : "heun_strat"; }

double default_dt(int n, double T) {
  // Largest dt <= 0.25 h^2 (stability proxy for the explicit remainder)
  // that divides T into whole steps.
  const double bound = 0.25 / (static_cast<double>(n) * n);
  return T / std::ceil(T / bound - 1e-9);
}

std::int64_t RunConfig::steps() const { return std::llround(T / dt); }

void RunConfig::validate() const {
  if (n < 8 || n % 2 != 0) throw ConfigError("n must be even and >= 8");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
  const double steps_exact = T / dt;
  if (std::abs(steps_exact - std::round(steps_exact)) > 1e-9 * std::max(1.0, steps_exact) || steps() < 1) {
    throw ConfigError("T must be a positive integer multiple of dt");
  }
  if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
  model.validate();
  if (scheme == Scheme::HeunStrat && model.form != ModelForm::StratonovichMcf) {
    throw ConfigError("scheme heun_strat requires form stratonovich_mcf");
  }
  if (scheme == Scheme::EmImex && model.form == ModelForm::StratonovichMcf) {
    throw ConfigError("form stratonovich_mcf requires scheme heun_strat (em_imex is an Ito scheme)");
  }
  if (filter_order < 0) throw ConfigError("filter_order must be >= 0 (0 disables the filter)");
  if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  try {
    parse_initial_condition(initial_condition);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial_condition: ") + e.what());
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(std::string(key) + ": expected a real number, got '" + std::string(v) + "'");
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
  Int out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(std::string(key) + ": expected on/off, got '" + std::string(v) + "'");
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  bool dt_given = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) throw ConfigError("duplicate key '" + std::string(key) + "'");

    if (key == "form") {
      const auto f = parse_model_form(val);
      if (!f) throw ConfigError("form: unknown value '" + std::string(val) + "'");
      cfg.model.form = *f;
    } else if (key == "n") {
      cfg.n = parse_int<int>(key, val);
    } else if (key == "dt") {
      cfg.dt = parse_double(key, val);
      dt_given = true;
    } else if (key == "T") {
      cfg.T = parse_double(key, val);
    } else if (key == "eps") {
      cfg.model.eps = parse_double(key, val);
    } else if (key == "eta") {
      cfg.model.eta = parse_double(key, val);
    } else if (key == "K") {
      cfg.model.big_k = parse_int<int>(key, val);
    } else if (key == "R") {
      cfg.model.R = parse_double(key, val);
    } else if (key == "rho") {
      cfg.model.rho = parse_double(key, val);
    } else if (key == "theta") {
      cfg.theta = parse_double(key, val);
    } else if (key == "scheme") {
      if (val == "em_imex") cfg.scheme = Scheme::EmImex;
      else if (val == "heun_strat") cfg.scheme = Scheme::HeunStrat;
      else throw ConfigError("scheme: expected em_imex or heun_strat");
    } else if (key == "method") {
      if (val == "spectral") cfg.method = Method::Spectral;
      else if (val == "central2") cfg.method = Method::Central2;
      else throw ConfigError("method: expected spectral or central2");
    } else if (key == "noise") {
      cfg.noise = parse_bool(key, val);
    } else if (key == "filter_order") {
      cfg.filter_order = parse_int<int>(key, val);
    } else if (key == "stop_at_tau") {
      cfg.stop_at_tau = parse_bool(key, val);
    } else if (key == "n_paths") {
      cfg.n_paths = parse_int<int>(key, val);
    } else if (key == "base_seed") {
      cfg.base_seed = parse_int<std::uint64_t>(key, val);
    } else if (key == "record_stride") {
      cfg.record_stride = parse_int<int>(key, val);
    } else if (key == "initial_condition") {
      cfg.initial_condition = std::string(val);
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(val);
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "'");
    }
  }
  if (!dt_given) cfg.dt = default_dt(cfg.n, cfg.T);
  cfg.validate();
  // The existence theory for the regularized forms needs 2K > k > 2 + N/2
  // with N = 2. Library callers may go below (e.g. stiffness studies); the
  // external config may not.
  const bool regularized =
      cfg.model.form == ModelForm::Regularized || cfg.model.form == ModelForm::RegularizedTruncated;
  if (regularized && !(2 * cfg.model.big_k > 4)) {
    throw ConfigError("K must satisfy 2K > 4 (K >= 3) for the regularized forms");
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "form = " << to_string(cfg.model.form) << '\n'
      << "n = " << cfg.n << '\n'
      << "dt = " << fmt_double(cfg.dt) << '\n'
      << "T = " << fmt_double(cfg.T) << '\n'
      << "eps = " << fmt_double(cfg.model.eps) << '\n'
      << "eta = " << fmt_double(cfg.model.eta) << '\n'
      << "K = " << cfg.model.big_k << '\n'
      << "R = " << fmt_double(cfg.model.R) << '\n'
      << "rho = " << fmt_double(cfg.model.rho) << '\n'
      << "theta = " << fmt_double(cfg.theta) << '\n'
      << "scheme = " << to_string(cfg.scheme) << '\n'
      << "method = " << to_string(cfg.method) << '\n'
      << "noise = " << (cfg.noise ? "on" : "off") << '\n'
      << "filter_order = " << cfg.filter_order << '\n'
      << "stop_at_tau = " << (cfg.stop_at_tau ? "on" : "off") << '\n'
      << "n_paths = " << cfg.n_paths << '\n'
      << "base_seed = " << cfg.base_seed << '\n'
      << "record_stride = " << cfg.record_stride << '\n'
      << "initial_condition = " << cfg.initial_condition << '\n'
      << "output_dir = " << cfg.output_dir << '\n';
  return out.str();
}

}  // namespace smcf
