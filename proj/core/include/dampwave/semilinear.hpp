#pragma once

#include "dampwave/exponents.hpp"
#include "dampwave/linear.hpp"
#include "dampwave/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dampwave {

enum class PowerVariant { abs_power, signed_power };
std::string to_string(PowerVariant v);
PowerVariant parse_variant(const std::string& text);

struct Nonlinearity {
    double p = 2.0;
    PowerVariant variant = PowerVariant::abs_power;

    void validate() const;
    double operator()(double u) const;
    // f(x + h) - f(x) without cancellation when |h| << |x|.
    double difference(double x, double h) const;
};

// Two-thirds truncation is on for p <= 3 and for non-integer p with |u|^p.
bool default_dealias(const Nonlinearity& nl);

struct StepperConfig {
    double dt = 0.01;
    bool dealias = true;
    // 0 selects 1e6 x max(||u0||_inf, ||u1||_inf).
    double blowup_threshold = 0.0;
    long max_steps = 10'000'000;
    // Test hook: 0 switches the nonlinear term off entirely.
    double nonlinear_scale = 1.0;

    void validate() const;
};

double default_blowup_threshold(const State& initial);

// Exponential integrator: exact linear part, f(u) frozen over each step.
class EtdStepper {
public:
    EtdStepper(const ModelSpec& model, const Nonlinearity& nl, const GridSpec& grid, const StepperConfig& cfg);

    // Advances s by dt. u_phys must hold the physical u of s on entry and
    // holds the physical u of the new state on exit.
    void step(SpectralState& s, std::vector<double>& u_phys, double dt);
    void step(SpectralState& s, std::vector<double>& u_phys) { step(s, u_phys, cfg_.dt); }

    // Physical u of a spectral state.
    void physical_u(const SpectralState& s, std::vector<double>& u_phys);

    const GridSpec& grid() const { return grid_; }
    const StepperConfig& config() const { return cfg_; }

private:
    const KernelTable& table(double dt);

    ModelSpec model_;
    Nonlinearity nl_;
    GridSpec grid_;
    StepperConfig cfg_;
    std::vector<long> ksq_;
    std::vector<unsigned char> mask_;
    std::vector<std::pair<double, KernelTable>> tables_;
    std::vector<cplx> work_;
    std::vector<double> fvals_;
};

State etd_step(const ModelSpec& model, const Nonlinearity& nl, const State& s, const StepperConfig& cfg);

enum class RunStatus { completed, blowup_detected, max_steps_reached };
std::string to_string(RunStatus s);

struct RunOutcome {
    RunStatus status = RunStatus::completed;
    double final_time = 0.0;
    std::optional<std::pair<double, double>> blowup_time_bracket;
    // u_L2, u_Linf, ut_L2, grad_L2, grad2_L2, hdot2sigma, energy_L2, mean_u,
    // and xt_weighted (running X(t) norm) when the rate table is defined.
    SeriesBundle series;
    State final_state;
    long steps = 0;
    double threshold = 0.0;
};

struct RunOptions {
    long record_every = 1;
};

RunOutcome run(const ModelSpec& model, const Nonlinearity& nl, const State& initial, const StepperConfig& cfg,
               double T, const RunOptions& opts = {});

struct PicardRecord {
    int index = 0;
    double xnorm_diff = 0.0;
    double ratio = 0.0;  // diff_j / diff_{j-1}; NaN for j = 0
};

struct PicardOptions {
    bool dealias = false;
};

struct PicardResult {
    std::vector<PicardRecord> records;
    bool diverging = false;
    std::string note;
    std::vector<double> nodes;
    State final_state;            // last iterate at T
    SeriesBundle last_increment;  // norms of u_J - u_{J-1} on the nodes
};

PicardResult picard_iterate(const ModelSpec& model, const Nonlinearity& nl, const State& initial, double T, int j_max,
                            int quadrature_points, const PicardOptions& opts = {});

// Exact rational for a sigma given as a double (denominators up to 10^4).
Rational sigma_rational(double sigma);

}  // namespace dampwave
