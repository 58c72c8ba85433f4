#pragma once

#include "config.hpp"

#include "dampwave/grid.hpp"
#include "dampwave/linear.hpp"
#include "dampwave/radial.hpp"

namespace dampwave::cli {

RealField make_field(const GridSpec& grid, const DataPreset& preset);

// amplitude_u1 replaces the u1 amplitude when set.
State make_state(const ExperimentConfig& cfg, std::optional<double> amplitude_u1 = std::nullopt);

// Radial transform of a centred preset; r_max truncates the profile when set.
RadialProfile make_profile(int n, const DataPreset& preset, std::optional<double> r_max);

GridSpec make_grid(const ExperimentConfig& cfg);

}  // namespace dampwave::cli
