#include "dampwave/radial.hpp"

#include "dampwave/errors.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <tuple>

namespace dampwave {

double unit_sphere_area(int n) {
    if (n < 1) throw DomainError("dimension must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialProfile RadialProfile::zero() { return RadialProfile{}; }

RadialProfile RadialProfile::gaussian(int n, double amplitude, double width) {
    if (n < 1) throw DomainError("dimension must be >= 1");
    if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
    RadialProfile p;
    p.kind_ = Kind::gaussian;
    // |g|^2 falls below exp(-80) of its peak beyond this radius
    p.r_max_ = std::sqrt(80.0) / width;
    p.tail_bound_ = std::exp(-40.0);
    const double scale = amplitude * std::pow(width, n);
    const double w2 = width * width;
    p.eval_ = std::make_shared<const std::function<double(double)>>(
        [scale, w2](double r) { return scale * std::exp(-0.5 * w2 * r * r); });
    return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> samples, double r_max, double tail_bound) {
    if (samples.size() < 4) throw DomainError("tabulated profile needs at least 4 samples");
    if (!(r_max > 0.0)) throw DomainError("tabulated profile needs r_max > 0");
    for (double v : samples)
        if (!std::isfinite(v)) throw DomainError("tabulated profile samples must be finite");
    RadialProfile p;
    p.kind_ = Kind::tabulated;
    p.r_max_ = r_max;
    p.tail_bound_ = tail_bound;
    const double h = r_max / static_cast<double>(samples.size() - 1);
    auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
        samples.begin(), samples.end(), 0.0, h);
    p.eval_ = std::make_shared<const std::function<double(double)>>([spline, r_max](double r) {
        if (r > r_max) return 0.0;
        return (*spline)(r);
    });
    return p;
}

RadialProfile RadialProfile::bump(int n, double amplitude, double radius, std::size_t samples) {
    if (n < 1) throw DomainError("dimension must be >= 1");
    if (!(radius > 0.0)) throw DomainError("bump radius must be positive");
    const double nu = 0.5 * n - 1.0;
    auto v = [amplitude, radius](double s) {
        double q = s / radius;
        if (q >= 1.0) return 0.0;
        return amplitude * std::exp(1.0 - 1.0 / (1.0 - q * q));
    };
    // z^{-nu} J_nu(z), the radial kernel of the unitary transform
    auto radial_kernel = [n, nu](double z) {
        if (n == 1) return std::sqrt(2.0 / M_PI) * std::cos(z);
        if (z < 1e-6) return 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
        return boost::math::cyl_bessel_j(nu, z) / std::pow(z, nu);
    };
    const double r_max = 160.0 / radius;
    std::vector<double> vals(samples);
    const int panels = 48;
    for (std::size_t i = 0; i < samples; ++i) {
        const double rho = r_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        double acc = 0.0;
        for (int pnl = 0; pnl < panels; ++pnl) {
            double a = radius * pnl / panels, b = radius * (pnl + 1) / panels;
            acc += boost::math::quadrature::gauss<double, 20>::integrate(
                [&](double s) { return v(s) * radial_kernel(rho * s) * std::pow(s, n - 1); }, a, b);
        }
        vals[i] = acc;
    }
    double peak = 0.0;
    for (double x : vals) peak = std::max(peak, std::abs(x));
    auto p = tabulated(std::move(vals), r_max, peak > 0.0 ? std::abs(vals.back()) / peak : 0.0);
    p.kind_ = Kind::bump;
    return p;
}

double RadialProfile::operator()(double r) const {
    if (!eval_) return 0.0;
    return (*eval_)(r);
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

double effective_cutoff(const ModelSpec& model, double r_prof, double t) {
    const double target = -40.0;
    if (slow_rate(model, r_prof) * t >= target) return r_prof;
    double lo = 0.0, hi = r_prof;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (slow_rate(model, mid) * t >= target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double phase_rate(const ModelSpec& model, double r) {
    auto roots = char_roots(model, r);
    return std::abs(roots.lambda_plus.imag());
}

}  // namespace

double radial_norm(const ModelSpec& model, int j, double kappa, const RadialProfile& v0hat,
                   const RadialProfile& v1hat, double t) {
    model.validate();
    if (j != 0 && j != 1) throw DomainError("radial_norm: j must be 0 or 1");
    if (!(kappa >= 0.0)) throw DomainError("radial_norm: kappa must be >= 0");
    if (!(t > 0.0)) throw DomainError("radial_norm: t must be positive");
    if (v0hat.is_zero() && v1hat.is_zero()) return 0.0;

    double r_prof = std::max(v0hat.is_zero() ? 0.0 : v0hat.r_max(), v1hat.is_zero() ? 0.0 : v1hat.r_max());
    const double r_eff = effective_cutoff(model, r_prof, t);
    const double surface = unit_sphere_area(model.n);
    const double power = 2.0 * kappa + model.n - 1.0;

    auto integrand = [&](double r) {
        auto kv = kernel_values(model, r, t, 0.0);
        double g0 = v0hat(r), g1 = v1hat(r);
        double w = (j == 0) ? kv.k0 * g0 + kv.k1 * g1 : kv.dtk0 * g0 + kv.dtk1 * g1;
        double weight = (power == 0.0) ? 1.0 : std::pow(r, power);
        return surface * w * w * weight;
    };

    // geometric panels toward the origin, then split by oscillation phase
    std::vector<double> edges{0.0};
    double r_min = 1e-6 / std::max(t, 1.0) * std::min(1.0, r_eff);
    for (double r = r_min; r < r_eff; r *= 2.0) edges.push_back(r);
    edges.push_back(r_eff);

    struct Piece {
        double a, b, value, err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    auto rule = [&](double a, double b) {
        double err = 0.0;
        double v = GK::integrate(integrand, a, b, 0, 0.0, &err);
        // the single-level estimate comes back unscaled from [-1, 1]
        return Piece{a, b, v, 0.5 * (b - a) * err};
    };
    std::priority_queue<Piece> queue;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        if (!(b > a)) continue;
        double tv = 0.0, prev = phase_rate(model, a);
        for (int s = 1; s <= 8; ++s) {
            double cur = phase_rate(model, a + (b - a) * s / 8.0);
            tv += std::abs(cur - prev);
            prev = cur;
        }
        // sin(omega t) winds by t * |d omega| across the panel
        const double phase = t * tv;
        long pieces = std::clamp(static_cast<long>(std::ceil(phase / (0.5 * M_PI))), 1L, 200000L);
        const double h = (b - a) / static_cast<double>(pieces);
        for (long k = 0; k < pieces; ++k) queue.push(rule(a + h * k, (k + 1 == pieces) ? b : a + h * (k + 1)));
    }

    // global refinement: split the piece with the largest error estimate
    auto sums = [&]() {
        double v = 0.0, e = 0.0;
        auto copy = queue;
        for (; !copy.empty(); copy.pop()) {
            v += copy.top().value;
            e += copy.top().err;
        }
        return std::make_pair(v, e);
    };
    auto [total, err_total] = sums();
    for (int splits = 0; splits < 400000 && err_total > 1e-11 * std::abs(total) && !queue.empty(); ++splits) {
        Piece worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            queue.push(worst);
            break;
        }
        Piece left = rule(worst.a, mid), right = rule(mid, worst.b);
        total += left.value + right.value - worst.value;
        err_total += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }
    std::tie(total, err_total) = sums();
    if (!std::isfinite(total)) throw QuadratureError("radial_norm: non-finite integral");
    if (total > 0.0 && err_total > 1e-8 * total) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", err_total / total);
        throw QuadratureError(std::string("radial_norm: quadrature did not converge (estimated error ") + buf +
                              " relative)");
    }
    return std::sqrt(std::max(total, 0.0));
}

TimeSeries decay_series_oracle(const ModelSpec& model, const RadialProfile& v0hat, const RadialProfile& v1hat,
                               const std::vector<double>& times, const Quantity& q) {
    TimeSeries ts;
    ts.quantity = q.name();
    ts.mode = "oracle";
    int j = 0;
    double kappa = 0.0;
    bool energy = false;
    switch (q.kind) {
        case QuantityKind::u_Lm:
        case QuantityKind::ut_Lm:
            if (q.m != 2.0) throw DomainError("oracle mode supports only L2-based quantities (got " + q.name() + ")");
            j = (q.kind == QuantityKind::ut_Lm) ? 1 : 0;
            break;
        case QuantityKind::grad_L2: kappa = 1.0; break;
        case QuantityKind::grad2_L2: kappa = 2.0; break;
        case QuantityKind::hdot: kappa = q.kappa; break;
        case QuantityKind::energy_L2: energy = true; break;
    }
    for (double t : times) {
        double v;
        if (energy) {
            double g = radial_norm(model, 0, 1.0, v0hat, v1hat, t);
            double d = radial_norm(model, 1, 0.0, v0hat, v1hat, t);
            v = std::sqrt(g * g + d * d);
        } else {
            v = radial_norm(model, j, kappa, v0hat, v1hat, t);
        }
        ts.push(t, v);
    }
    ts.validate();
    return ts;
}

}  // namespace dampwave
