#include "dampwave/semilinear.hpp"

#include "dampwave/analysis.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dampwave {

std::string to_string(PowerVariant v) {
    return v == PowerVariant::abs_power ? "abs_power" : "signed_power";
}

PowerVariant parse_variant(const std::string& text) {
    if (text == "abs_power") return PowerVariant::abs_power;
    if (text == "signed_power") return PowerVariant::signed_power;
    throw DomainError("nonlinearity variant must be abs_power or signed_power (got '" + text + "')");
}

void Nonlinearity::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("nonlinearity exponent p must be > 1");
}

double Nonlinearity::operator()(double u) const {
    double a = std::pow(std::abs(u), p);
    if (variant == PowerVariant::signed_power && u < 0.0) return -a;
    return a;
}

double Nonlinearity::difference(double x, double h) const {
    if (x == 0.0) return (*this)(h);
    double ratio = h / x;
    if (!(ratio > -1.0)) return (*this)(x + h) - (*this)(x);
    // |x+h|^p - |x|^p = |x|^p (exp(p log(1 + h/x)) - 1); same sign as x
    double d = std::pow(std::abs(x), p) * std::expm1(p * std::log1p(ratio));
    if (variant == PowerVariant::signed_power && x < 0.0) return -d;
    return d;
}

bool default_dealias(const Nonlinearity& nl) {
    if (nl.p <= 3.0) return true;
    return nl.variant == PowerVariant::abs_power && nl.p != std::floor(nl.p);
}

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("stepper dt must be positive");
    if (max_steps <= 0) throw DomainError("stepper max_steps must be positive");
    if (blowup_threshold < 0.0) throw DomainError("blowup threshold must be positive (0 selects the default)");
}

double default_blowup_threshold(const State& initial) {
    double m = std::max(initial.u.max_abs(), initial.ut.max_abs());
    return 1e6 * (m > 0.0 ? m : 1.0);
}

EtdStepper::EtdStepper(const ModelSpec& model, const Nonlinearity& nl, const GridSpec& grid, const StepperConfig& cfg)
    : model_(model), nl_(nl), grid_(grid), cfg_(cfg) {
    model_.validate();
    nl_.validate();
    grid_.validate();
    cfg_.validate();
    ksq_ = ksq_map(grid_);
    mask_ = two_thirds_mask(grid_);
    work_.resize(grid_.size());
    fvals_.resize(grid_.size());
}

const KernelTable& EtdStepper::table(double dt) {
    for (auto& [h, t] : tables_)
        if (h == dt) return t;
    tables_.emplace_back(dt, KernelTable(model_, grid_, dt));
    return tables_.back().second;
}

void EtdStepper::physical_u(const SpectralState& s, std::vector<double>& u_phys) {
    u_phys.resize(grid_.size());
    std::copy(s.u.coeffs.begin(), s.u.coeffs.end(), work_.begin());
    inverse_inplace(grid_, work_.data(), u_phys.data());
}

void EtdStepper::step(SpectralState& s, std::vector<double>& u_phys, double dt) {
    const auto& tab = table(dt);
    if (cfg_.nonlinear_scale == 0.0) {
        propagate_inplace(s, tab, ksq_);
        physical_u(s, u_phys);
        return;
    }
    const std::size_t sz = grid_.size();
    for (std::size_t i = 0; i < sz; ++i) fvals_[i] = cfg_.nonlinear_scale * nl_(u_phys[i]);
    forward_inplace(grid_, fvals_.data(), work_.data());
    auto& u = s.u.coeffs;
    auto& ut = s.ut.coeffs;
    for (std::size_t i = 0; i < sz; ++i) {
        const auto& kv = tab.at(ksq_[i]);
        const cplx a = u[i], b = ut[i];
        const cplx f = (cfg_.dealias && !mask_[i]) ? cplx(0.0, 0.0) : work_[i];
        u[i] = kv.k0 * a + kv.k1 * b + kv.int_k1 * f;
        ut[i] = kv.dtk0 * a + kv.dtk1 * b + kv.k1 * f;
    }
    s.time += dt;
    physical_u(s, u_phys);
}

State etd_step(const ModelSpec& model, const Nonlinearity& nl, const State& s, const StepperConfig& cfg) {
    EtdStepper stepper(model, nl, s.u.grid, cfg);
    auto S = to_spectral(s);
    std::vector<double> u_phys = s.u.values;
    stepper.step(S, u_phys);
    return to_physical(S);
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::blowup_detected: return "blowup_detected";
        case RunStatus::max_steps_reached: return "max_steps_reached";
    }
    return "?";
}

namespace {

// Norms of a spectral state with the multipliers precomputed once.
class Meter {
public:
    Meter(const GridSpec& g, double sigma) : vol_(g.volume()) {
        auto x2 = xi_squared(g);
        w1_ = x2;
        w2_.resize(x2.size());
        ws_.resize(x2.size());
        for (std::size_t i = 0; i < x2.size(); ++i) {
            w2_[i] = x2[i] * x2[i];
            ws_[i] = x2[i] == 0.0 ? 0.0 : std::pow(x2[i], 2.0 * sigma);
        }
    }

    void record(SeriesBundle& b, const SpectralState& s, double u_inf) const {
        double u2 = 0, ut2 = 0, g1 = 0, g2 = 0, hs = 0;
        for (std::size_t i = 0; i < w1_.size(); ++i) {
            double a = std::norm(s.u.coeffs[i]);
            u2 += a;
            ut2 += std::norm(s.ut.coeffs[i]);
            g1 += w1_[i] * a;
            g2 += w2_[i] * a;
            hs += ws_[i] * a;
        }
        const double t = s.time;
        b["u_L2"].push(t, std::sqrt(vol_ * u2));
        b["u_Linf"].push(t, u_inf);
        b["ut_L2"].push(t, std::sqrt(vol_ * ut2));
        b["grad_L2"].push(t, std::sqrt(vol_ * g1));
        b["grad2_L2"].push(t, std::sqrt(vol_ * g2));
        b["hdot2sigma"].push(t, std::sqrt(vol_ * hs));
        b["energy_L2"].push(t, std::sqrt(vol_ * (ut2 + g1)));
        b["mean_u"].push(t, s.u.coeffs[0].real());
    }

private:
    double vol_;
    std::vector<double> w1_, w2_, ws_;
};

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(x));
    }
    return m;
}

void attach_xt(SeriesBundle& b, const ModelSpec& model) {
    Rational sigma;
    RateTable rates;
    try {
        sigma = sigma_rational(model.sigma);
        rates = predicted_rates(sigma, model.n, Rational(2));
    } catch (const DomainError&) {
        return;
    }
    auto comps = xt_components(sigma);
    TimeSeries xt;
    xt.quantity = "xt_weighted";
    xt.mode = "grid";
    const auto& axis = b.at("u_L2").times;
    double sup = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        double acc = 0.0;
        for (const auto& [key, rk] : comps)
            acc += std::pow(1.0 + axis[i], -to_double(rates.at(rk).exponent)) * b.at(key).values[i];
        sup = std::max(sup, acc);
        xt.push(axis[i], sup);
    }
    b["xt_weighted"] = std::move(xt);
}

}  // namespace

RunOutcome run(const ModelSpec& model, const Nonlinearity& nl, const State& initial, const StepperConfig& cfg,
               double T, const RunOptions& opts) {
    if (!(T > initial.time)) throw DomainError("run horizon must exceed the initial time");
    if (!initial.u.all_finite() || !initial.ut.all_finite()) throw DomainError("initial state must be finite");
    if (opts.record_every < 1) throw DomainError("record_every must be >= 1");
    RunOutcome out;
    out.threshold = cfg.blowup_threshold > 0.0 ? cfg.blowup_threshold : default_blowup_threshold(initial);
    if (!(out.threshold > initial.u.max_abs()))
        throw DomainError("blowup threshold must exceed the initial max-norm of u");

    EtdStepper stepper(model, nl, initial.u.grid, cfg);
    Meter meter(initial.u.grid, model.sigma);
    auto S = to_spectral(initial);
    std::vector<double> u_phys = initial.u.values;
    meter.record(out.series, S, max_abs(u_phys));
    for (auto& [k, s] : out.series) s.quantity = k;

    const double dt = cfg.dt;
    const double eps = 1e-12 * dt;
    long steps = 0;
    auto blown = [&](const std::vector<double>& u) {
        double m = max_abs(u);
        return !(m <= out.threshold);
    };
    while (S.time < T - eps) {
        if (steps >= cfg.max_steps) {
            out.status = RunStatus::max_steps_reached;
            break;
        }
        const double h = std::min(dt, T - S.time);
        SpectralState trial = S;
        std::vector<double> trial_u = u_phys;
        stepper.step(trial, trial_u, h);
        ++steps;
        if (blown(trial_u)) {
            // bisect the failing step three times
            double lo = S.time, hi = S.time + h;
            for (int k = 0; k < 3; ++k) {
                const double half = 0.5 * (hi - lo);
                SpectralState probe = S;
                std::vector<double> probe_u = u_phys;
                stepper.step(probe, probe_u, half);
                if (blown(probe_u)) {
                    hi = lo + half;
                } else {
                    lo = lo + half;
                    S = std::move(probe);
                    u_phys = std::move(probe_u);
                }
            }
            out.status = RunStatus::blowup_detected;
            out.blowup_time_bracket = std::make_pair(lo, hi);
            break;
        }
        S = std::move(trial);
        u_phys = std::move(trial_u);
        if (steps % opts.record_every == 0 || S.time >= T - eps) meter.record(out.series, S, max_abs(u_phys));
    }
    if (out.series.at("u_L2").times.back() < S.time) meter.record(out.series, S, max_abs(u_phys));
    attach_xt(out.series, model);
    out.final_time = S.time;
    out.steps = steps;
    out.final_state = to_physical(S);
    return out;
}

Rational sigma_rational(double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0,1]");
    // continued fraction convergents
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = sigma;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(x);
        long long ai = static_cast<long long>(a);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > 10000) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - sigma) <= 1e-12) return Rational(p1, q1);
        double frac = x - a;
        if (frac == 0.0) break;
        x = 1.0 / frac;
    }
    throw DomainError("sigma has no exact rational form with denominator <= 10000");
}

}  // namespace dampwave
