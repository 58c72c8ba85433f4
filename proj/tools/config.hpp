#pragma once

#include "dampwave/exponents.hpp"
#include "dampwave/kernels.hpp"
#include "dampwave/semilinear.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dampwave::cli {

// Every violation found while reading a config, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

enum class PresetKind { zero, gaussian, bump, band_limited_random };
std::string to_string(PresetKind k);

struct DataPreset {
    PresetKind kind = PresetKind::zero;
    double amplitude = 1.0;
    double width = 1.0;
    double radius = 1.0;
    std::vector<double> center;  // n entries
    int max_mode = 4;
    std::uint64_t seed = 1;
};

enum class SeriesMode { grid, oracle };

struct ExperimentConfig {
    ModelSpec model;
    Rational sigma{1, 2};
    SeriesMode mode = SeriesMode::grid;
    int points = 512;
    double box_length = 64.0;
    std::optional<double> oracle_r_max;  // nullopt: chosen from the tail bound
    DataPreset u0, u1;

    std::vector<std::string> quantities{"u_L2"};
    std::vector<double> times;
    std::optional<std::pair<double, double>> window;
    double tol = 0.05;
    bool one_sided = false;
    bool include_zero_mode = false;

    Nonlinearity nl;
    StepperConfig stepper;
    double horizon = 10.0;
    long record_every = 1;

    int picard_iterations = 8;
    int picard_points = 101;
    int picard_contract_from = 3;
    double picard_ratio_max = 0.5;
    bool picard_etd_check = true;
    double picard_etd_tol = 1e-3;

    std::vector<double> probe_p;
    std::vector<double> probe_amplitudes;
    std::vector<std::string> probe_expect{"auto"};

    std::vector<Rational> exp_sigmas{Rational(1, 2)};
    int exp_n_min = 2;
    int exp_n_max = 5;
    Rational exp_m{2};

    std::vector<double> compare_times;
    double compare_tol = 1e-4;

    std::string output_dir = "out";

    // Resolved key = value pairs, defaults included, in key order.
    std::map<std::string, std::string> resolved;
    std::vector<std::string> warnings;
};

// Parses `section.key = value` lines. Throws ConfigError listing every
// problem. `command` selects command-specific checks and warnings.
ExperimentConfig parse_config(const std::string& text, const std::string& command = "");

// Text of a manifest that parses back to the same configuration.
std::string manifest_text(const ExperimentConfig& cfg, const std::string& command);

// Overrides the seed of both data presets.
void override_seed(ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace dampwave::cli
