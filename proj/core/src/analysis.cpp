#include "dampwave/analysis.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dampwave {

Window default_window(const TimeSeries& series) {
    if (series.times.empty()) throw DomainError("empty series has no fit window");
    double hi = series.times.back();
    return Window{hi / 100.0, hi};
}

namespace {

std::vector<std::size_t> window_points(const TimeSeries& s, const Window& w) {
    s.validate();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.times.size(); ++i)
        if (s.times[i] >= w.lo && s.times[i] <= w.hi) idx.push_back(i);
    if (idx.empty()) throw DomainError("no series points inside the fit window");
    for (auto i : idx)
        if (!(s.values[i] > 0.0)) throw DomainError("series values in the fit window must be positive");
    return idx;
}

}  // namespace

RateFit fit_rate(const TimeSeries& series, const Window& window) {
    auto idx = window_points(series, window);
    if (idx.size() < 5) throw DomainError("fit_rate needs at least 5 points in the window");
    const double k = static_cast<double>(idx.size());
    double sx = 0, sy = 0;
    for (auto i : idx) {
        sx += std::log1p(series.times[i]);
        sy += std::log(series.values[i]);
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto i : idx) {
        double dx = std::log1p(series.times[i]) - mx, dy = std::log(series.values[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("fit window spans a single time");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (auto i : idx) {
        double r = std::log(series.values[i]) - (fit.intercept + fit.slope * std::log1p(series.times[i]));
        ss_res += r * r;
    }
    fit.r_squared = (syy > 0.0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.window = window;
    fit.points = idx.size();
    return fit;
}

LogGrowth log_growth_check(const TimeSeries& series, const Window& window) {
    auto idx = window_points(series, window);
    LogGrowth out;
    out.ratio_min = INFINITY;
    out.ratio_max = 0.0;
    for (auto i : idx) {
        double r = series.values[i] / std::log(M_E + series.times[i]);
        out.ratio_min = std::min(out.ratio_min, r);
        out.ratio_max = std::max(out.ratio_max, r);
    }
    out.bounded = out.ratio_max <= 2.0 * out.ratio_min;
    return out;
}

std::vector<std::pair<std::string, std::string>> xt_components(const Rational& sigma) {
    switch (regime_of(sigma)) {
        case RegimeTag::half:
        case RegimeTag::parabolic_like:
            return {{"u_L2", "u_Lm"}, {"grad_L2", "grad_Lm"}, {"ut_L2", "ut_Lm"}};
        case RegimeTag::visco:
            return {{"u_L2", "u_Lm"}, {"grad_L2", "grad_Lm"}, {"grad2_L2", "grad2_L2"}, {"ut_L2", "ut_Lm"}};
        case RegimeTag::hyperbolic_like:
            return {{"u_L2", "u_Lm"}, {"grad_L2", "grad_Lm"}, {"ut_L2", "ut_Lm"}, {"hdot2sigma", "hdot2sigma"}};
    }
    return {};
}

double xt_norm(const SeriesBundle& bundle, const Rational& sigma, int n, const Rational& m) {
    auto rates = predicted_rates(sigma, n, m);
    auto comps = xt_components(sigma);
    const TimeSeries* first = nullptr;
    std::vector<std::pair<const TimeSeries*, double>> used;
    for (const auto& [key, rate_key] : comps) {
        auto it = bundle.find(key);
        if (it == bundle.end()) throw DomainError("X(t) norm needs the series '" + key + "'");
        it->second.validate();
        if (!first) first = &it->second;
        else if (it->second.times != first->times)
            throw DomainError("X(t) norm series '" + key + "' has a different time axis");
        // the logarithmic factor of the n = 2 cases is not weighted
        used.emplace_back(&it->second, to_double(rates.at(rate_key).exponent));
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < first->times.size(); ++i) {
        double acc = 0.0;
        for (const auto& [s, e] : used) acc += std::pow(1.0 + s->times[i], -e) * s->values[i];
        sup = std::max(sup, acc);
    }
    return sup;
}

Verdict compare(const RateFit& fit, double predicted, double tol, Sidedness side, const std::string& quantity) {
    Verdict v;
    v.quantity = quantity;
    v.predicted = predicted;
    v.measured = fit.slope;
    v.tol = tol;
    v.window = fit.window;
    v.side = side;
    v.pass = (side == Sidedness::two_sided) ? std::abs(fit.slope - predicted) <= tol : fit.slope <= predicted + tol;
    return v;
}

}  // namespace dampwave
