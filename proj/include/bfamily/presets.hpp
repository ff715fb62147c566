#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bfamily/field.hpp"

namespace bfamily {

/// exp(-1 / (1 - y^2)) for |y| < 1, zero otherwise.
double smooth_bump(double y);

/// C-infinity step: 0 for y <= 0, 1 for y >= 1.
double smooth_step(double y);

struct InitialData {
  ScalarField u0;
  ScalarField rho0;
};

/// Named initial data, all defined relative to the grid length L:
///   bump-pair    u0 = exp(-(x - 0.45 L)^2),        rho0 = 0.5 exp(-(x - 0.525 L)^2)
///   steep-pair   u0 = 1.5 exp(-(x - 0.45 L)^2),    rho0 = 0.5 exp(-(x - 0.525 L)^2)
///   constant     u0 = 1,                           rho0 = 0
///   single-mode  u0 = 0.5 sin(2 pi x / L),         rho0 = 0
InitialData make_preset(std::string_view name, const Grid& grid);

std::vector<std::string> preset_names();

}  // namespace bfamily
