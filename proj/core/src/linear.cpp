#include "dampwave/linear.hpp"

#include "dampwave/errors.hpp"
#include "dampwave/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dampwave {

void TimeSeries::validate() const {
    if (times.size() != values.size()) throw DomainError("time series length mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw DomainError("series times must be finite and >= 0");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("series times must be strictly increasing");
        if (!std::isfinite(values[i])) throw DomainError("series values must be finite");
    }
}

State::State(RealField u0, RealField u1, double t0) : u(std::move(u0)), ut(std::move(u1)), time(t0) {
    if (u.grid != ut.grid) throw DomainError("u and ut must share one grid");
}

SpectralState to_spectral(const State& s) {
    return SpectralState{forward_transform(s.u), forward_transform(s.ut), s.time};
}

State to_physical(const SpectralState& s) {
    return State(inverse_transform(s.u, SymmetryCheck::skip), inverse_transform(s.ut, SymmetryCheck::skip), s.time);
}

KernelTable::KernelTable(const ModelSpec& model, const GridSpec& grid, double dt) : dt_(dt) {
    const long kmax = grid.max_ksq();
    values_.resize(static_cast<std::size_t>(kmax) + 1);
    const double dk = grid.dxi();
    for (long k2 = 0; k2 <= kmax; ++k2)
        values_[static_cast<std::size_t>(k2)] = kernel_values(model, dk * std::sqrt(static_cast<double>(k2)), dt, dt);
}

std::vector<long> ksq_map(const GridSpec& grid) {
    std::vector<long> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid.ksq(i);
    return out;
}

void propagate_inplace(SpectralState& s, const KernelTable& table, const std::vector<long>& ksq) {
    auto& u = s.u.coeffs;
    auto& ut = s.ut.coeffs;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& kv = table.at(ksq[i]);
        const cplx a = u[i], b = ut[i];
        u[i] = kv.k0 * a + kv.k1 * b;
        ut[i] = kv.dtk0 * a + kv.dtk1 * b;
    }
    s.time += table.dt();
}

SpectralState propagate(const ModelSpec& model, const SpectralState& s, double t_target) {
    model.validate();
    if (!(t_target >= s.time)) throw DomainError("propagate: target time precedes the state time");
    const double dt = t_target - s.time;
    SpectralState out = s;
    if (dt == 0.0) return out;
    KernelTable table(model, s.u.grid, dt);
    propagate_inplace(out, table, ksq_map(s.u.grid));
    out.time = t_target;
    return out;
}

State propagate(const ModelSpec& model, const State& s, double t_target) {
    if (t_target == s.time) return s;
    return to_physical(propagate(model, to_spectral(s), t_target));
}

std::pair<State, State> frequency_split(const State& s, double cutoff) {
    if (!(cutoff > 0.0)) throw DomainError("frequency_split cutoff must be positive");
    auto S = to_spectral(s);
    SpectralState lo = S, hi = S;
    const auto& g = s.u.grid;
    const double dk2 = g.dxi() * g.dxi();
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool low = std::sqrt(dk2 * static_cast<double>(g.ksq(i))) <= cutoff;
        auto& zero_in = low ? hi : lo;
        zero_in.u.coeffs[i] = zero_in.ut.coeffs[i] = cplx(0.0, 0.0);
    }
    return {to_physical(lo), to_physical(hi)};
}

std::string Quantity::name() const {
    auto fmt = [](double x) {
        if (std::isinf(x)) return std::string("inf");
        std::ostringstream os;
        os << x;
        return os.str();
    };
    switch (kind) {
        case QuantityKind::u_Lm: return "u_L" + fmt(m);
        case QuantityKind::ut_Lm: return "ut_L" + fmt(m);
        case QuantityKind::grad_L2: return "grad_L2";
        case QuantityKind::hdot: return "hdot(" + fmt(kappa) + ")";
        case QuantityKind::energy_L2: return "energy_L2";
        case QuantityKind::grad2_L2: return "grad2_L2";
    }
    return "?";
}

Quantity Quantity::parse(const std::string& text) {
    auto number = [&](const std::string& s) {
        if (s == "inf") return std::numeric_limits<double>::infinity();
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty()) throw DomainError("unknown quantity '" + text + "'");
        return v;
    };
    Quantity q;
    if (text == "grad_L2") q.kind = QuantityKind::grad_L2;
    else if (text == "energy_L2") q.kind = QuantityKind::energy_L2;
    else if (text == "grad2_L2") q.kind = QuantityKind::grad2_L2;
    else if (text.rfind("ut_L", 0) == 0) {
        q.kind = QuantityKind::ut_Lm;
        q.m = number(text.substr(4));
    } else if (text.rfind("u_L", 0) == 0) {
        q.kind = QuantityKind::u_Lm;
        q.m = number(text.substr(3));
    } else if (text.rfind("hdot(", 0) == 0 && text.back() == ')') {
        q.kind = QuantityKind::hdot;
        q.kappa = number(text.substr(5, text.size() - 6));
    } else {
        throw DomainError("unknown quantity '" + text + "'");
    }
    if ((q.kind == QuantityKind::u_Lm || q.kind == QuantityKind::ut_Lm) && !(q.m >= 1.0))
        throw DomainError("quantity exponent m must be >= 1");
    if (q.kind == QuantityKind::hdot && !(q.kappa >= 0.0)) throw DomainError("hdot order must be >= 0");
    return q;
}

namespace {

double field_norm(const SpectralField& F, double m, bool drop_zero) {
    if (m == 2.0) {
        double acc = 0.0;
        for (std::size_t i = drop_zero ? 1 : 0; i < F.coeffs.size(); ++i) acc += std::norm(F.coeffs[i]);
        return std::sqrt(F.grid.volume() * acc);
    }
    SpectralField G = F;
    if (drop_zero) G.coeffs[0] = cplx(0.0, 0.0);
    return grid_norm(inverse_transform(G, SymmetryCheck::skip), m);
}

}  // namespace

double measure_quantity(const SpectralState& s, const Quantity& q, bool exclude_zero_mode) {
    switch (q.kind) {
        case QuantityKind::u_Lm: return field_norm(s.u, q.m, exclude_zero_mode);
        case QuantityKind::ut_Lm: return field_norm(s.ut, q.m, exclude_zero_mode);
        case QuantityKind::grad_L2: return sobolev_seminorm(s.u, 1.0);
        case QuantityKind::grad2_L2: return sobolev_seminorm(s.u, 2.0);
        case QuantityKind::hdot:
            if (q.kappa == 0.0) return field_norm(s.u, 2.0, exclude_zero_mode);
            return sobolev_seminorm(s.u, q.kappa);
        case QuantityKind::energy_L2: {
            double g = sobolev_seminorm(s.u, 1.0);
            double v = field_norm(s.ut, 2.0, exclude_zero_mode);
            return std::sqrt(g * g + v * v);
        }
    }
    return 0.0;
}

double energy(const SpectralState& s) {
    double g = sobolev_seminorm(s.u, 1.0);
    double v = sobolev_seminorm(s.ut, 0.0);
    return v * v + g * g;
}

TimeSeries decay_series(const ModelSpec& model, const State& initial, const std::vector<double>& times,
                        const Quantity& q, const GridSeriesOptions& opts) {
    model.validate();
    TimeSeries ts;
    ts.quantity = q.name();
    ts.mode = "grid";
    auto S0 = to_spectral(initial);
    for (double t : times) {
        if (!(t >= initial.time)) throw DomainError("decay_series times must not precede the initial time");
        auto St = propagate(model, S0, t);
        ts.push(t, measure_quantity(St, q, opts.exclude_zero_mode));
    }
    ts.validate();
    return ts;
}

}  // namespace dampwave
