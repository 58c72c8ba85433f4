#include "dampwave/analysis.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/semilinear.hpp"
#include "dampwave/spectral.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace dampwave;
using Catch::Approx;

namespace {

double rel_l2(const RealField& a, const RealField& b) {
    return grid_norm(a - b, 2.0) / std::max(grid_norm(b, 2.0), 1e-300);
}

State zero_state(const GridSpec& g) { return State{RealField(g), RealField(g), 0.0}; }

}  // namespace

TEST_CASE("Nonlinearity") {
    Nonlinearity a{2.5, PowerVariant::abs_power};
    Nonlinearity s{3.0, PowerVariant::signed_power};
    REQUIRE(a(0.0) == 0.0);
    REQUIRE(a(-2.0) == Approx(std::pow(2.0, 2.5)));
    REQUIRE(s(-2.0) == Approx(-8.0));
    REQUIRE(a.difference(3.0, 1e-9) == Approx(2.5 * std::pow(3.0, 1.5) * 1e-9).epsilon(1e-8));
    REQUIRE(s.difference(-1.0, 2.0) == Approx(s(1.0) - s(-1.0)));
    REQUIRE_THROWS_AS((Nonlinearity{1.0, PowerVariant::abs_power}).validate(), DomainError);
    REQUIRE(parse_variant("signed_power") == PowerVariant::signed_power);
    REQUIRE_THROWS_AS(parse_variant("cubic"), DomainError);
    REQUIRE(default_dealias(Nonlinearity{2.0}));
    REQUIRE(default_dealias(Nonlinearity{3.0}));
    REQUIRE_FALSE(default_dealias(Nonlinearity{4.0}));
    REQUIRE(default_dealias(Nonlinearity{4.5, PowerVariant::abs_power}));
}

TEST_CASE("zero data stays zero") {
    GridSpec g{2, 16, 10.0};
    ModelSpec m{2, 0.5, 2.0};
    auto s = etd_step(m, Nonlinearity{2.0}, zero_state(g), StepperConfig{});
    REQUIRE(s.u.max_abs() == 0.0);
    REQUIRE(s.ut.max_abs() == 0.0);
    auto out = run(m, Nonlinearity{2.0}, zero_state(g), StepperConfig{0.1}, 2.0);
    REQUIRE(out.status == RunStatus::completed);
    for (const auto& [k, ser] : out.series)
        for (double v : ser.values) REQUIRE(v == 0.0);
}

TEST_CASE("etd_step without nonlinearity reproduces propagate") {
    std::mt19937_64 rng(11);
    GridSpec g{2, 32, 12.0};
    for (double sigma : {0.25, 0.5, 0.75, 1.0}) {
        ModelSpec m{2, sigma, 1.5};
        State s{oracle::random_field(g, rng), oracle::random_field(g, rng), 0.0};
        StepperConfig cfg{0.05};
        cfg.nonlinear_scale = 0.0;
        auto a = etd_step(m, Nonlinearity{3.0}, s, cfg);
        auto b = propagate(m, s, 0.05);
        REQUIRE(rel_l2(a.u, b.u) <= 1e-13);
        REQUIRE(rel_l2(a.ut, b.ut) <= 1e-13);
        REQUIRE(a.time == Approx(0.05));
    }
}

TEST_CASE("self-convergence under dt halving") {
    GridSpec g{2, 32, 20.0};
    ModelSpec m{2, 0.5, 2.0};
    Nonlinearity nl{2.0};
    State s0{oracle::gaussian_field(g, 0.5, 2.0), oracle::gaussian_field(g, 0.5, 1.5), 0.0};
    const double T = 1.0;
    auto solve = [&](double dt) {
        StepperConfig cfg{dt};
        return run(m, nl, s0, cfg, T).final_state;
    };
    auto ref = solve(1.0 / 64 / 64);
    std::vector<double> errs;
    for (double dt : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) errs.push_back(grid_norm(solve(dt).u - ref.u, 2.0));
    for (std::size_t i = 1; i < errs.size(); ++i) {
        double order = std::log2(errs[i - 1] / errs[i]);
        REQUIRE(order >= 0.8);
    }
}

TEST_CASE("positivity with nonnegative velocity data") {
    GridSpec g{2, 64, 24.0};
    ModelSpec m{2, 0.5, 2.0};
    State s0{RealField(g), oracle::gaussian_field(g, 1.0, 1.5), 0.0};
    auto out = run(m, Nonlinearity{2.0}, s0, StepperConfig{0.02}, 2.0);
    REQUIRE(out.status == RunStatus::completed);
    const double umax = out.final_state.u.max_abs();
    double umin = 0.0;
    for (double v : out.final_state.u.values) umin = std::min(umin, v);
    REQUIRE(umin >= -1e-3 * umax);
}

TEST_CASE("mean of u is nondecreasing for positive data") {
    GridSpec g{2, 32, 16.0};
    ModelSpec m{2, 0.5, 2.0};
    State s0{oracle::gaussian_field(g, 0.2, 1.5), oracle::gaussian_field(g, 0.3, 1.5), 0.0};
    auto out = run(m, Nonlinearity{2.0}, s0, StepperConfig{0.05}, 5.0);
    const auto& mean = out.series.at("mean_u").values;
    for (std::size_t i = 1; i < mean.size(); ++i) REQUIRE(mean[i] >= mean[i - 1] - 1e-14);
}

TEST_CASE("blow-up is bracketed") {
    GridSpec g{2, 32, 16.0};
    ModelSpec m{2, 0.5, 2.0};
    State s0{RealField(g), oracle::gaussian_field(g, 5.0, 1.5), 0.0};
    StepperConfig cfg{0.01};
    auto out = run(m, Nonlinearity{2.0}, s0, cfg, 50.0);
    REQUIRE(out.status == RunStatus::blowup_detected);
    REQUIRE(out.blowup_time_bracket.has_value());
    auto [lo, hi] = *out.blowup_time_bracket;
    REQUIRE(lo < hi);
    REQUIRE(hi - lo <= cfg.dt / 8 + 1e-15);
    REQUIRE(hi < 50.0);
    REQUIRE(out.threshold == Approx(5e6));
}

TEST_CASE("max_steps is reported separately") {
    GridSpec g{2, 16, 10.0};
    ModelSpec m{2, 0.5, 2.0};
    StepperConfig cfg{0.1};
    cfg.max_steps = 3;
    State s0{RealField(g), oracle::gaussian_field(g, 1e-2, 1.5), 0.0};
    auto out = run(m, Nonlinearity{4.0}, s0, cfg, 10.0);
    REQUIRE(out.status == RunStatus::max_steps_reached);
    REQUIRE_FALSE(out.blowup_time_bracket.has_value());
}

TEST_CASE("dealiasing is idempotent") {
    std::mt19937_64 rng(5);
    GridSpec g{2, 32, 10.0};
    auto U = forward_transform(oracle::random_field(g, rng));
    auto mask = two_thirds_mask(g);
    auto once = U;
    apply_mask(once, mask);
    auto twice = once;
    apply_mask(twice, mask);
    for (std::size_t i = 0; i < U.coeffs.size(); ++i) REQUIRE(once.coeffs[i] == twice.coeffs[i]);
}

TEST_CASE("Picard: zero data") {
    GridSpec g{2, 16, 10.0};
    auto res = picard_iterate(ModelSpec{2, 0.5, 2.0}, Nonlinearity{4.0}, zero_state(g), 2.0, 4, 9);
    REQUIRE(res.records.size() == 4);
    for (const auto& r : res.records) REQUIRE(r.xnorm_diff == 0.0);
    REQUIRE_FALSE(res.diverging);
}

TEST_CASE("Picard: small data contracts and matches the ETD run") {
    GridSpec g{2, 32, 24.0};
    ModelSpec m{2, 0.5, 2.0};
    Nonlinearity nl{4.0};
    State s0{RealField(g), oracle::gaussian_field(g, 0.3, 1.5), 0.0};
    const double T = 4.0;
    auto res = picard_iterate(m, nl, s0, T, 6, 81);
    REQUIRE(std::isnan(res.records[0].ratio));
    for (std::size_t j = 2; j < res.records.size(); ++j) REQUIRE(res.records[j].ratio <= 0.5);
    REQUIRE_FALSE(res.diverging);

    // same weighted norm evaluated through analysis::xt_norm
    double again = xt_norm(res.last_increment, sigma_rational(0.5), 2, Rational(2));
    REQUIRE(again == Approx(res.records.back().xnorm_diff).epsilon(1e-12));

    StepperConfig cfg{T / 80};
    cfg.dealias = false;
    auto etd = run(m, nl, s0, cfg, T);
    double scale = grid_norm(etd.final_state.u, 2.0);
    REQUIRE(grid_norm(res.final_state.u - etd.final_state.u, 2.0) <= 1e-3 * scale);
}

TEST_CASE("sigma_rational") {
    REQUIRE(sigma_rational(0.25) == Rational(1, 4));
    REQUIRE(sigma_rational(0.75) == Rational(3, 4));
    REQUIRE(sigma_rational(1.0) == Rational(1));
    REQUIRE(sigma_rational(1.0 / 3) == Rational(1, 3));
}
