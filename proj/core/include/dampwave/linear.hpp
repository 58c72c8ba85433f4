#pragma once

#include "dampwave/grid.hpp"
#include "dampwave/kernels.hpp"
#include "dampwave/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dampwave {

struct State {
    RealField u;
    RealField ut;
    double time = 0.0;

    State() = default;
    explicit State(const GridSpec& g, double t0 = 0.0) : u(g), ut(g), time(t0) {}
    State(RealField u0, RealField u1, double t0 = 0.0);
};

struct SpectralState {
    SpectralField u;
    SpectralField ut;
    double time = 0.0;
};

SpectralState to_spectral(const State& s);
State to_physical(const SpectralState& s);

// Kernel values for one step length, indexed by the integer |k|^2 of a mode.
class KernelTable {
public:
    KernelTable() = default;
    KernelTable(const ModelSpec& model, const GridSpec& grid, double dt);

    const KernelValues& at(long ksq) const { return values_[static_cast<std::size_t>(ksq)]; }
    double dt() const { return dt_; }

private:
    double dt_ = 0.0;
    std::vector<KernelValues> values_;
};

// Per-mode ksq lookup shared by the table users.
std::vector<long> ksq_map(const GridSpec& grid);

void propagate_inplace(SpectralState& s, const KernelTable& table, const std::vector<long>& ksq);

State propagate(const ModelSpec& model, const State& s, double t_target);
SpectralState propagate(const ModelSpec& model, const SpectralState& s, double t_target);

// Sharp split at |xi| = cutoff; modes with |xi| <= cutoff go to the low part.
std::pair<State, State> frequency_split(const State& s, double cutoff);

enum class QuantityKind { u_Lm, ut_Lm, grad_L2, hdot, energy_L2, grad2_L2 };

struct Quantity {
    QuantityKind kind = QuantityKind::u_Lm;
    double m = 2.0;      // u_Lm, ut_Lm
    double kappa = 0.0;  // hdot

    std::string name() const;
    static Quantity parse(const std::string& text);
};

struct GridSeriesOptions {
    // The torus zero mode moves as w(0) + t w'(0) and never decays; drop it
    // from the measured field unless explicitly requested.
    bool exclude_zero_mode = true;
};

double measure_quantity(const SpectralState& s, const Quantity& q, bool exclude_zero_mode);

TimeSeries decay_series(const ModelSpec& model, const State& initial,
                        const std::vector<double>& times, const Quantity& q,
                        const GridSeriesOptions& opts = {});

// Energy ||u_t||^2 + ||grad u||^2 of a state, computed spectrally.
double energy(const SpectralState& s);

}  // namespace dampwave
