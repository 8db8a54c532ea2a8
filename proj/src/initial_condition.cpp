#include "smcf/initial_condition.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "smcf/noise.hpp"

namespace smcf {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return v;
}

template <class Int>
Int to_int(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto e = s.find(sep, pos);
    out.push_back(s.substr(pos, e == std::string_view::npos ? std::string_view::npos : e - pos));
    if (e == std::string_view::npos) break;
    pos = e + 1;
  }
  return out;
}

ModesIC parse_modes(std::string_view body) {
  body = trim(body);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw std::invalid_argument("modes: expected [(k1,k2,amp,phase),...]");
  }
  body = trim(body.substr(1, body.size() - 2));
  ModesIC ic;
  while (!body.empty()) {
    if (body.front() != '(') throw std::invalid_argument("modes: expected '('");
    const auto close = body.find(')');
    if (close == std::string_view::npos) throw std::invalid_argument("modes: missing ')'");
    const auto parts = split(body.substr(1, close - 1), ',');
    if (parts.size() != 4) throw std::invalid_argument("modes: each mode needs 4 entries");
    ic.modes.push_back({to_int<int>(parts[0]), to_int<int>(parts[1]), to_double(parts[2]), to_double(parts[3])});
    body = trim(body.substr(close + 1));
    if (!body.empty()) {
      if (body.front() != ',') throw std::invalid_argument("modes: expected ',' between modes");
      body = trim(body.substr(1));
    }
  }
  if (ic.modes.empty()) throw std::invalid_argument("modes: empty mode list");
  return ic;
}

}  // namespace

InitialCondition parse_initial_condition(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("expected '<kind>:<args>'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (kind == "flat") return FlatIC{to_double(args)};
  if (kind == "modes") return parse_modes(args);
  if (kind == "random_smooth") {
    const auto parts = split(args, ',');
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("random_smooth: expected seed,decay[,amp]");
    }
    RandomSmoothIC ic{to_int<std::uint64_t>(parts[0]), to_double(parts[1]), 0.03};
    if (parts.size() == 3) ic.amp = to_double(parts[2]);
    if (ic.decay < 3.0) throw std::invalid_argument("random_smooth: decay must be >= 3");
    return ic;
  }
  throw std::invalid_argument("unknown initial condition kind '" + std::string(kind) + "'");
}

ScalarField make_initial_field(const InitialCondition& ic, GridSpec grid) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (const auto* flat = std::get_if<FlatIC>(&ic)) return ScalarField(grid, flat->value);

  std::vector<FourierMode> modes;
  if (const auto* m = std::get_if<ModesIC>(&ic)) {
    modes = m->modes;
  } else {
    const auto& r = std::get<RandomSmoothIC>(ic);
    constexpr int kmax = 4;
    std::uint64_t counter = 0;
    // Half-plane of wavenumbers so each real mode appears once.
    for (int k1 = 0; k1 <= kmax; ++k1) {
      for (int k2 = -kmax; k2 <= kmax; ++k2) {
        if (k1 == 0 && k2 <= 0) continue;
        const double envelope = std::pow(std::hypot(k1, k2), -r.decay);
        const double a = counter_normal(r.seed, 0x1C, counter++);
        const double b = counter_normal(r.seed, 0x1C, counter++);
        // a sin(theta) + b cos(theta) as amp * sin(theta + phase)
        modes.push_back({k1, k2, r.amp * envelope * std::hypot(a, b), std::atan2(b, a)});
      }
    }
  }
  return ScalarField::from_function(grid, [&](double x, double y) {
    double s = 0.0;
    for (const auto& m : modes) s += m.amp * std::sin(two_pi * (m.k1 * x + m.k2 * y) + m.phase);
    return s;
  });
}

ScalarField make_initial_field(std::string_view spec, GridSpec grid) {
  return make_initial_field(parse_initial_condition(spec), grid);
}

}  // namespace smcf
