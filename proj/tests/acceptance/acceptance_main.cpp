// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status is 0 only when every criterion passes.
#include "dampwave/analysis.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/exponents.hpp"
#include "dampwave/kernels.hpp"
#include "dampwave/linear.hpp"
#include "dampwave/radial.hpp"
#include "dampwave/semilinear.hpp"
#include "dampwave/spectral.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dampwave;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

std::vector<double> logspace(double lo, double hi, int count) {
    std::vector<double> t;
    for (int i = 0; i < count; ++i) t.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
    t.back() = hi;
    return t;
}

double oracle_slope(const ModelSpec& m, const RadialProfile& v1, const Quantity& q, double lo, double hi) {
    auto s = decay_series_oracle(m, RadialProfile::zero(), v1, logspace(lo, hi, 13), q);
    return fit_rate(s, {lo, hi}).slope;
}

Outcome c1() {
    ModelSpec m{3, 1.0, 1.0};
    auto v1 = RadialProfile::gaussian(3, 1.0, 1.0);
    double su = oracle_slope(m, v1, Quantity::parse("u_L2"), 1e2, 1e4);
    double st = oracle_slope(m, v1, Quantity::parse("ut_L2"), 1e2, 1e4);
    bool ok = std::abs(su + 0.25) <= 0.03 && std::abs(st + 0.75) <= 0.05;
    return {ok, "u_L2 slope " + fmt(su) + " (want -0.25 +- 0.03), ut_L2 slope " + fmt(st) + " (want -0.75 +- 0.05)"};
}

Outcome c2(int n) {
    const Rational sigma(1, 4);
    ModelSpec m{n, 0.25, 1.0};
    auto rates = predicted_rates(sigma, n, Rational(2));
    double pu = to_double(rates.at("u_Lm").exponent), pg = to_double(rates.at("grad_Lm").exponent);
    auto v1 = RadialProfile::gaussian(n, 1.0, 1.0);
    double su = oracle_slope(m, v1, Quantity::parse("u_L2"), 1e2, 1e4);
    double sg = oracle_slope(m, v1, Quantity::parse("grad_L2"), 1e2, 1e4);
    bool ok = std::abs(su - pu) <= 0.05 && std::abs(sg - pg) <= 0.05;
    return {ok, "n=" + std::to_string(n) + ": u_L2 slope " + fmt(su) + " (want " + fmt(pu) + " +- 0.05), grad_L2 slope " +
                    fmt(sg) + " (want " + fmt(pg) + " +- 0.05)"};
}

Outcome c3() {
    GridSpec g{2, 512, 512.0};
    ModelSpec m{2, 0.5, 2.0};
    State s{RealField(g), oracle::gaussian_field(g, 1.0, 1.0), 0.0};
    // the wave front stays well inside the box over the window
    auto series = decay_series(m, s, logspace(10.0, 100.0, 12), Quantity::parse("energy_L2"));
    double slope = fit_rate(series, {10.0, 100.0}).slope;
    bool ok = std::abs(slope + 1.0) <= 0.1;
    return {ok, "||(grad v, v_t)||_L2 slope " + fmt(slope) + " over t in [10,100] at 512^2, L=512 (want -1 +- 0.1)"};
}

Outcome c4() {
    ModelSpec m{2, 0.75, 4.0};
    auto v1 = RadialProfile::gaussian(2, 1.0, 1.0);
    auto s = decay_series_oracle(m, RadialProfile::zero(), v1, logspace(10.0, 1e4, 13), Quantity::parse("u_L2"));
    auto lg = log_growth_check(s, {10.0, 1e4});
    double ratio = lg.ratio_max / lg.ratio_min;
    return {lg.bounded, "max/min of ||v||/log(e+t) over [10,1e4] is " + fmt(ratio) + " (want <= 2), mu=4"};
}

Outcome c5() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> us(0.05, 1.0), um(0.1, 5.0), ulr(-2.0, 2.0), ut(0.1, 20.0), ud(-1.0, 1.0);
    double worst = 0.0;
    int regimes[4] = {0, 0, 0, 0};
    int near_degenerate = 0;
    bool quintuple = true;
    const int points = 1000;
    for (int i = 0; i < points; ++i) {
        double sigma = us(rng), mu = um(rng), r = std::pow(10.0, ulr(rng)), t = ut(rng);
        if (i % 4 == 0) {
            // straddle the discriminant-zero radius
            if (i % 8 == 0) {
                // exactly degenerate at every radius when i % 16 == 0
                sigma = 0.5;
                mu = (i % 16 == 0) ? 2.0 : 2.0 + 1e-8 * ud(rng);
            } else {
                if (std::abs(sigma - 0.5) < 0.05) sigma = 0.3;
                r = std::pow(mu / 2.0, 1.0 / (1.0 - 2.0 * sigma)) * (1.0 + 1e-8 * ud(rng));
            }
        }
        ModelSpec m{2, sigma, mu};
        auto roots = char_roots(m, r);
        regimes[static_cast<int>(roots.regime)]++;
        if (std::abs(roots.discriminant) < 1e-6) near_degenerate++;
        double scale = std::max({1.0, std::abs(roots.lambda_plus), std::abs(roots.lambda_minus)});
        double h = 1e-3 / scale;
        worst = std::max(worst, ode_residual(m, r, std::max(t, h), h));
        auto kv = kernel_values(m, r, 0.0, 0.0);
        quintuple = quintuple && kv.k0 == 1.0 && kv.k1 == 0.0 && kv.dtk0 == 0.0 && kv.dtk1 == 1.0 && kv.int_k1 == 0.0;
    }

    double gap_max = 0.0;
    for (double sigma : {0.2, 0.3, 0.45, 0.6, 0.75, 0.9, 1.0})
        for (double mu : {0.5, 1.0, 2.0, 3.0}) {
            ModelSpec m{2, sigma, mu};
            const double rstar = std::pow(mu / 2.0, 1.0 / (1.0 - 2.0 * sigma));
            const double e = 1e-6 * rstar;
            for (double t : {0.1, 1.0, 10.0}) {
                auto at = [&](double r) { return kernel_values(m, r, t, t); };
                auto l1 = at(rstar - e), l3 = at(rstar - 3 * e), r1 = at(rstar + e), r3 = at(rstar + 3 * e);
                auto gap = [](double a1, double a3, double b1, double b3) {
                    return std::abs((1.5 * a1 - 0.5 * a3) - (1.5 * b1 - 0.5 * b3)) / (std::abs(a1) + 1e-300);
                };
                gap_max = std::max({gap_max, gap(l1.k1, l3.k1, r1.k1, r3.k1), gap(l1.k0, l3.k0, r1.k0, r3.k0),
                                    gap(l1.dtk1, l3.dtk1, r1.dtk1, r3.dtk1)});
            }
        }
    bool all_regimes = regimes[0] > 0 && regimes[1] > 0 && regimes[2] > 0;
    bool ok = worst < 1e-6 && quintuple && gap_max <= 1e-5 && all_regimes && near_degenerate > 0;
    return {ok, "max residual " + fmt(worst, 3) + " over " + std::to_string(points) + " points (real " +
                    std::to_string(regimes[0]) + ", complex " + std::to_string(regimes[1]) + ", degenerate " +
                    std::to_string(regimes[2]) + ", |disc|<1e-6: " + std::to_string(near_degenerate) +
                    "), quintuple " + (quintuple ? "exact" : "NOT exact") + ", boundary gap " + fmt(gap_max, 3)};
}

Outcome c6() {
    std::mt19937_64 rng(6);
    GridSpec g{2, 128, 40.0};
    ModelSpec m{2, 0.5, 2.0};
    State s{oracle::random_field(g, rng), oracle::random_field(g, rng), 0.0};
    StepperConfig cfg{0.05};
    cfg.nonlinear_scale = 0.0;
    auto a = etd_step(m, Nonlinearity{3.0}, s, cfg);
    auto b = propagate(m, s, cfg.dt);
    double rel = std::max(grid_norm(a.u - b.u, 2.0) / grid_norm(b.u, 2.0), grid_norm(a.ut - b.ut, 2.0) / grid_norm(b.ut, 2.0));

    // single-mode small-amplitude run
    GridSpec gs{2, 32, 2 * M_PI * 4};
    RealField u0(gs);
    for (std::size_t i = 0; i < gs.size(); ++i) u0.values[i] = 0.5 * std::cos(gs.coordinate(gs.unflatten(i)[0]) / 4);
    State s0{u0, RealField(gs), 0.0};
    Nonlinearity nl{2.0};
    auto solve = [&](double dt) { return run(m, nl, s0, StepperConfig{dt}, 1.0).final_state.u; };
    auto ref = solve(1.0 / 4096);
    TimeSeries errs;
    for (double dt : {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8}) errs.push(dt, grid_norm(solve(dt) - ref, 2.0));
    // slope of log error against log dt
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        double x = std::log(errs.times[i]), y = std::log(errs.values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(errs.size());
    double order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    bool ok = rel <= 1e-13 && order >= 0.8;
    return {ok, "etd vs propagate relative difference " + fmt(rel, 3) + " on 128^2 (want <= 1e-13), convergence order " +
                    fmt(order) + " (want >= 0.8)"};
}

Outcome c7() {
    GridSpec g{2, 64, 32.0};
    ModelSpec m{2, 0.5, 2.0};
    Nonlinearity nl{4.0};
    State s0{RealField(g), oracle::gaussian_field(g, 1e-3, 1.0), 0.0};
    double dm = dm_norm(s0.u, s0.ut, 2.0, 1.0);
    const double T = 10.0;
    const int Q = 101;
    auto res = picard_iterate(m, nl, s0, T, 8, Q);
    double worst_ratio = 0.0;
    for (const auto& r : res.records)
        if (r.index >= 3) worst_ratio = std::max(worst_ratio, r.ratio);
    StepperConfig cfg{T / (Q - 1)};
    cfg.dealias = false;
    auto etd = run(m, nl, s0, cfg, T);
    double dist = grid_norm(res.final_state.u - etd.final_state.u, 2.0) / grid_norm(etd.final_state.u, 2.0);
    bool ok = dm <= 1e-2 && res.records.size() == 8 && worst_ratio <= 0.5 && !res.diverging && dist <= 1e-3;
    return {ok, "dm_norm " + fmt(dm, 3) + ", largest diff ratio from iterate 3 on " + fmt(worst_ratio, 3) +
                    " (want <= 0.5), Picard vs ETD relative L2 at T=10: " + fmt(dist, 3) + " (want <= 1e-3)"};
}

RealField bump(const GridSpec& g, double amp, double radius) {
    RealField u(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double r2 = 0;
        for (int d = 0; d < g.n; ++d) r2 += g.coordinate(idx[d]) * g.coordinate(idx[d]);
        double s = r2 / (radius * radius);
        if (s < 1.0) u.values[i] = amp * std::exp(1.0 - 1.0 / (1.0 - s));
    }
    return u;
}

Outcome c8(double p, double amp) {
    GridSpec g{2, 128, 64.0};
    ModelSpec m{2, 0.5, 2.0};
    State s0{RealField(g), bump(g, amp, 2.0), 0.0};
    double bd = blowdata_value(m, s0.u, s0.ut);
    Nonlinearity nl{p};
    StepperConfig cfg{0.01};
    cfg.dealias = default_dealias(nl);
    auto out = run(m, nl, s0, cfg, 50.0, RunOptions{10});
    const double initial = std::max(s0.u.max_abs(), s0.ut.max_abs());
    const double final_max = out.final_state.u.max_abs();
    std::string head = "p=" + fmt(p) + " amplitude " + fmt(amp) + " blowdata " + fmt(bd, 3) + ": " + to_string(out.status);
    if (p < 3.0) {
        bool ok = bd > 0.0 && out.status == RunStatus::blowup_detected && out.blowup_time_bracket &&
                  out.blowup_time_bracket->second < 50.0;
        std::string br = out.blowup_time_bracket ? " in [" + fmt(out.blowup_time_bracket->first, 6) + ", " +
                                                       fmt(out.blowup_time_bracket->second, 6) + "]"
                                                 : "";
        return {ok, head + br + " (want blow-up before T=50)"};
    }
    bool ok = bd > 0.0 && out.status == RunStatus::completed && final_max < initial;
    return {ok, head + " at T=" + fmt(out.final_time) + ", max-norm " + fmt(initial, 3) + " -> " + fmt(final_max, 3) +
                    " (want completed and below the initial value)"};
}

Outcome c9() {
    using R = Rational;
    int checked = 0, failed = 0;
    auto expect = [&](R sigma, int n, R m, const std::string& want) {
        ++checked;
        if (admissible_range(sigma, n, m).admissible.to_string() != want) ++failed;
    };
    // sigma = 1/2
    expect(R(1, 2), 2, R(3, 2), "(3,4]");
    expect(R(1, 2), 2, R(2), "(3,inf)");
    expect(R(1, 2), 3, R(2), "(2,3]");
    expect(R(1, 2), 3, R(8, 5), "(2,15/7]");
    expect(R(1, 2), 4, R(2), "{2}");
    expect(R(1, 2), 4, R(9, 5), "[9/5,20/11]");
    expect(R(1, 2), 4, R(13, 8), "(5/3,32/19]");
    for (R m : {R(2), R(3, 2), R(11, 10)}) expect(R(1, 2), 5, m, "empty");
    // sigma = 1
    expect(R(1), 2, R(2), "(4,inf)");
    expect(R(1), 3, R(2), "(5/2,inf)");
    expect(R(1), 4, R(2), "(2,inf)");
    expect(R(1), 5, R(2), "[2,5]");
    expect(R(1), 6, R(2), "[2,3]");
    expect(R(1), 7, R(2), "[2,7/3]");
    expect(R(1), 8, R(2), "{2}");
    for (int n = 9; n <= 16; ++n) expect(R(1), n, R(2), "empty");
    // sigma in (0, 1/2)
    for (R s : {R(1, 10), R(1, 4), R(2, 5)}) {
        expect(s, 2, R(2), Interval::closed(R(2), std::nullopt).above(1 + 1 / (1 - s)).to_string());
        expect(s, 3, R(2), "[2,3]");
        expect(s, 4, R(2), "{2}");
        for (int n = 5; n <= 12; ++n) expect(s, n, R(2), "empty");
    }
    // sigma in (1/2, 1)
    for (R s : {R(3, 5), R(3, 4), R(9, 10)}) {
        expect(s, 2, R(2), Interval::closed(R(2), std::nullopt).above(2 + 2 * s).to_string());
        expect(s, 4, R(2), Interval::closed(R(2), 1 / (1 - s)).to_string());
        if (s > R(5, 8)) expect(s, 5, R(2), Interval::closed(R(2), R(5) / (5 - 4 * s)).to_string());
        if (s > R(3, 4)) expect(s, 6, R(2), Interval::closed(R(2), R(3) / (3 - 2 * s)).to_string());
        if (s > R(7, 8)) expect(s, 7, R(2), Interval::closed(R(2), R(7) / (7 - 4 * s)).to_string());
        for (int n = 8; n <= 16; ++n) expect(s, n, R(2), "empty");
    }
    expect(R(3, 5), 3, R(2), "(21/10,5]");
    expect(R(3, 4), 3, R(2), "(9/4,inf)");
    int gap_fail = 0;
    for (int n = 2; n <= 12; ++n) {
        for (R s : {R(1, 10), R(1, 4), R(1, 3), R(1, 2)})
            if (gap_report(s, n).gap != R(0)) ++gap_fail;
        for (R s : {R(3, 5), R(3, 4), R(9, 10), R(1)})
            if (gap_report(s, n).gap != (2 * s - 1) / (n - 1)) ++gap_fail;
    }
    int gn_fail = 0;
    for (int n = 1; n <= 8; ++n)
        for (R k : {R(1), R(1, 2), R(3, 2), R(2)})
            for (R m : {R(6, 5), R(3, 2), R(2)})
                if (n > k * m && gn_theta(n, k, m, R(n) * m / (n - k * m)).theta != R(1)) ++gn_fail;
    bool ok = failed == 0 && gap_fail == 0 && gn_fail == 0;
    return {ok, std::to_string(checked - failed) + "/" + std::to_string(checked) + " range rows, " +
                    std::to_string(gap_fail) + " gap mismatches, " + std::to_string(gn_fail) + " gn_theta mismatches"};
}

Outcome c10() {
    std::mt19937_64 rng(10);
    const int cases = 100;
    int fails[4] = {0, 0, 0, 0};
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_real_distribution<double> len(1.0, 50.0), us(0.05, 1.0), um(0.1, 5.0), coef(-3, 3), tt(0, 20);
    auto grid = [&] {
        int n = dim(rng);
        int pts = n == 1 ? 128 : n == 2 ? 32 : 16;
        return GridSpec{n, pts, len(rng)};
    };
    for (int c = 0; c < cases; ++c) {
        auto g = grid();
        auto u = oracle::random_field(g, rng);
        auto U = forward_transform(u);
        double spectral = 0, phys = 0;
        for (const auto& z : U.coeffs) spectral += std::norm(z);
        for (double v : u.values) phys += v * v;
        phys *= g.cell_volume();
        if (std::abs(g.volume() * spectral - phys) > 1e-12 * phys) ++fails[0];
        if (grid_norm(inverse_transform(U) - u, 2.0) > 1e-13 * grid_norm(u, 2.0)) ++fails[1];
    }
    for (int c = 0; c < cases; ++c) {
        auto g = grid();
        ModelSpec m{g.n, us(rng), um(rng)};
        State s1{oracle::random_field(g, rng), oracle::random_field(g, rng), 0.0};
        State s2{oracle::random_field(g, rng), oracle::random_field(g, rng), 0.0};
        double a = coef(rng), b = coef(rng), t = tt(rng);
        auto lhs = propagate(m, State{a * s1.u + b * s2.u, a * s1.ut + b * s2.ut, 0.0}, t);
        auto p1 = propagate(m, s1, t), p2 = propagate(m, s2, t);
        auto ru = a * p1.u + b * p2.u, rut = a * p1.ut + b * p2.ut;
        double scale = std::max(grid_norm(ru, 2.0), grid_norm(rut, 2.0));
        if (grid_norm(lhs.u - ru, 2.0) > 1e-11 * scale || grid_norm(lhs.ut - rut, 2.0) > 1e-11 * scale) ++fails[2];

        auto S = to_spectral(s1);
        double e_prev = energy(S);
        for (int k = 0; k < 5; ++k) {
            S = propagate(m, S, S.time + tt(rng) / 5);
            double e = energy(S);
            if (e > e_prev * (1 + 1e-12)) {
                ++fails[3];
                break;
            }
            e_prev = e;
        }
    }
    bool ok = fails[0] + fails[1] + fails[2] + fails[3] == 0;
    return {ok, std::to_string(cases) + " cases each; failures: Parseval " + std::to_string(fails[0]) + ", round trip " +
                    std::to_string(fails[1]) + ", linearity " + std::to_string(fails[2]) + ", energy " +
                    std::to_string(fails[3])};
}

struct Criterion {
    std::string id;
    std::string title;
    double budget_s;
    std::function<Outcome()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> all = {
        {"C1", "linear rate, sigma=1, n=3 (oracle)", 30, c1},
        {"C2a", "linear rate, sigma=1/4, n=2 (oracle)", 30, [] { return c2(2); }},
        {"C2b", "linear rate, sigma=1/4, n=3 (oracle)", 30, [] { return c2(3); }},
        {"C3", "linear rate, sigma=1/2, grid mode", 60, c3},
        {"C4", "log case, sigma=3/4, n=2", 30, c4},
        {"C5", "kernel correctness sweep", 10, c5},
        {"C6", "ETD/linear consistency and self-convergence", 60, c6},
        {"C7", "Picard contraction", 120, c7},
        {"C8a", "blow-up contrast, p=2", 120, [] { return c8(2.0, 5.0); }},
        {"C8b", "blow-up contrast, p=4 small data", 120, [] { return c8(4.0, 1e-2); }},
        {"C9", "exponent golden tests", 1, c9},
        {"C10", "infrastructure property suites", 60, c10},
    };
    int failures = 0;
    for (const auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < c.budget_s;
        bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%-4s %s  %s: %s [%.2f s, budget %.0f s%s]\n", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
    return failures == 0 ? 0 : 1;
}
