#include "presets.hpp"

#include "dampwave/errors.hpp"
#include "dampwave/spectral.hpp"

#include <cmath>
#include <random>

namespace dampwave::cli {

namespace {

double radius_sq(const GridSpec& g, std::size_t flat, const std::vector<double>& center) {
    auto idx = g.unflatten(flat);
    double r2 = 0.0;
    for (int d = 0; d < g.n; ++d) {
        // nearest periodic image of the centre
        double x = g.coordinate(idx[d]) - center[d];
        x -= g.box_length * std::round(x / g.box_length);
        r2 += x * x;
    }
    return r2;
}

RealField band_limited_random(const GridSpec& g, const DataPreset& p) {
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    SpectralField U(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        bool inside = true;
        for (int d = 0; d < g.n; ++d) {
            int k = g.wavenumber(idx[d]);
            inside = inside && std::abs(k) <= p.max_mode && k != -g.points_per_axis / 2;
        }
        double re = coef(rng), im = coef(rng);
        if (inside) U.coeffs[i] = cplx(re, im);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t j = g.mirror(i);
        if (j == i) U.coeffs[i] = U.coeffs[i].real();
        else if (j > i) U.coeffs[j] = std::conj(U.coeffs[i]);
    }
    RealField u = inverse_transform(U);
    double peak = u.max_abs();
    if (peak > 0.0)
        for (double& v : u.values) v *= p.amplitude / peak;
    return u;
}

}  // namespace

GridSpec make_grid(const ExperimentConfig& cfg) {
    GridSpec g{cfg.model.n, cfg.points, cfg.box_length};
    g.validate();
    return g;
}

RealField make_field(const GridSpec& g, const DataPreset& p) {
    RealField u(g);
    switch (p.kind) {
        case PresetKind::zero: break;
        case PresetKind::gaussian:
            for (std::size_t i = 0; i < g.size(); ++i)
                u.values[i] = p.amplitude * std::exp(-radius_sq(g, i, p.center) / (2 * p.width * p.width));
            break;
        case PresetKind::bump:
            for (std::size_t i = 0; i < g.size(); ++i) {
                double s = radius_sq(g, i, p.center) / (p.radius * p.radius);
                if (s < 1.0) u.values[i] = p.amplitude * std::exp(1.0 - 1.0 / (1.0 - s));
            }
            break;
        case PresetKind::band_limited_random: return band_limited_random(g, p);
    }
    return u;
}

State make_state(const ExperimentConfig& cfg, std::optional<double> amplitude_u1) {
    const GridSpec g = make_grid(cfg);
    DataPreset p1 = cfg.u1;
    if (amplitude_u1) p1.amplitude = *amplitude_u1;
    return State{make_field(g, cfg.u0), make_field(g, p1), 0.0};
}

RadialProfile make_profile(int n, const DataPreset& p, std::optional<double> r_max) {
    RadialProfile prof;
    switch (p.kind) {
        case PresetKind::zero: return RadialProfile::zero();
        case PresetKind::gaussian: prof = RadialProfile::gaussian(n, p.amplitude, p.width); break;
        case PresetKind::bump: prof = RadialProfile::bump(n, p.amplitude, p.radius); break;
        case PresetKind::band_limited_random: throw DomainError("band_limited_random data has no radial profile");
    }
    if (!r_max) return prof;
    const std::size_t samples = 4097;
    std::vector<double> values(samples);
    for (std::size_t i = 0; i < samples; ++i) values[i] = prof(*r_max * double(i) / (samples - 1));
    return RadialProfile::tabulated(std::move(values), *r_max, prof.tail_bound());
}

}  // namespace dampwave::cli
