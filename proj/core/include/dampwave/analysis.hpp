#pragma once

#include "dampwave/exponents.hpp"
#include "dampwave/series.hpp"

#include <string>
#include <vector>

namespace dampwave {

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    Window window;
    std::size_t points = 0;
};

// Last two decades of the series: [t_max / 100, t_max].
Window default_window(const TimeSeries& series);

// Least squares of log(value) against log(1 + t) over the window.
RateFit fit_rate(const TimeSeries& series, const Window& window);

struct LogGrowth {
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    bool bounded = false;  // ratio_max / ratio_min <= 2
};

// value / log(e + t) over the window.
LogGrowth log_growth_check(const TimeSeries& series, const Window& window);

// Bundle keys entering the X(t) norm for the regime of sigma, paired with the
// rate-table key that supplies the weight.
std::vector<std::pair<std::string, std::string>> xt_components(const Rational& sigma);

// sup over stored times of sum over components of (1+tau)^{-exponent} value(tau).
double xt_norm(const SeriesBundle& bundle, const Rational& sigma, int n, const Rational& m);

enum class Sidedness { two_sided, one_sided };

struct Verdict {
    std::string quantity;
    double predicted = 0.0;
    double measured = 0.0;
    double tol = 0.0;
    bool pass = false;
    Window window;
    Sidedness side = Sidedness::two_sided;
};

// Two-sided: |slope - predicted| <= tol. One-sided: slope <= predicted + tol
// (decay at least as fast as predicted).
Verdict compare(const RateFit& fit, double predicted, double tol, Sidedness side = Sidedness::two_sided,
                const std::string& quantity = "");

}  // namespace dampwave
