#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "smcf/field.hpp"

namespace smcf {

struct FlatIC {
  double value = 0.0;
};

/// amp * sin(2 pi (k1 x1 + k2 x2) + phase)
struct FourierMode {
  int k1 = 0;
  int k2 = 0;
  double amp = 0.0;
  double phase = 0.0;
};

struct ModesIC {
  std::vector<FourierMode> modes;
};

/// Random trigonometric polynomial with |k|^{-decay} envelope over
/// 1 <= max(|k1|, |k2|) <= 4, scaled by amp.
struct RandomSmoothIC {
  std::uint64_t seed = 0;
  double decay = 4.0;
  double amp = 0.03;
};

using InitialCondition = std::variant<FlatIC, ModesIC, RandomSmoothIC>;

/// Parses "flat:c", "modes:[(k1,k2,amp,phase),...]", or
/// "random_smooth:seed,decay[,amp]". Throws std::invalid_argument.
InitialCondition parse_initial_condition(std::string_view spec);

ScalarField make_initial_field(const InitialCondition& ic, GridSpec grid);
ScalarField make_initial_field(std::string_view spec, GridSpec grid);

}  // namespace smcf
