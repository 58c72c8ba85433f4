#include "dampwave/kernels.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dampwave {

void ModelSpec::validate() const {
    if (n < 1) throw DomainError("dimension n must be >= 1");
    if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0,1]");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::real: return "real";
        case Regime::complex: return "complex";
        case Regime::degenerate: return "degenerate";
        case Regime::zero: return "zero";
    }
    return "?";
}

namespace {

double half_damping(const ModelSpec& m, double r) {
    return 0.5 * m.mu * std::pow(r, 2.0 * m.sigma);
}

// (e^z - 1)/z
double phi1(double z) {
    if (std::abs(z) < kSeriesCut) return 1.0 + z * (0.5 + z * (1.0 / 6 + z * (1.0 / 24 + z / 120)));
    return std::expm1(z) / z;
}

// sin(x)/x
double sinc(double x) {
    if (std::abs(x) < kSeriesCut) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// Taylor series of the K1 integral, valid when (2a + r) h <= 1.
double int_k1_series(double a, double r, double h) {
    double b0 = 0.0, b1 = h;
    double sum = b1 / 2.0;
    const double p = 2.0 * a * h, q = r * r * h * h;
    for (int k = 0; k < 200; ++k) {
        double b2 = (-p * (k + 1) * b1 - q * b0) / ((k + 2.0) * (k + 1.0));
        double term = b2 / (k + 3.0);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) && std::abs(b2) + std::abs(b1) <= 1e-18 * h) break;
        b0 = b1;
        b1 = b2;
    }
    return h * sum;
}

struct Core {
    double k0, k1, dtk0, dtk1;
};

Core core_values(double a, double r, double t) {
    Core c{};
    if (a > r) {
        const double d = std::sqrt((a - r) * (a + r));
        const double lp = -r * r / (a + d);
        const double lm = -a - d;
        c.k1 = std::exp(lp * t) * t * phi1(-2.0 * d * t);
        const double em = std::exp(lm * t);
        c.dtk1 = em + lp * c.k1;
        c.k0 = em + (a + d) * c.k1;
    } else {
        const double w = std::sqrt((r - a) * (r + a));
        const double ea = std::exp(-a * t);
        c.k1 = ea * t * sinc(w * t);
        const double ec = ea * std::cos(w * t);
        c.dtk1 = ec - a * c.k1;
        c.k0 = ec + a * c.k1;
    }
    c.dtk0 = -r * r * c.k1;
    return c;
}

double int_k1_impl(double a, double r, double h) {
    if (h == 0.0) return 0.0;
    if (r == 0.0) return 0.5 * h * h;
    if ((2.0 * a + r) * h <= 1.0) return int_k1_series(a, r, h);
    if (a <= r) {
        const double w = std::sqrt((r - a) * (r + a));
        const double s = std::sin(0.5 * w * h);
        return (-std::expm1(-a * h) * std::cos(w * h) + 2.0 * s * s -
                a * h * std::exp(-a * h) * sinc(w * h)) /
               (r * r);
    }
    const double d = std::sqrt((a - r) * (a + r));
    const double lp = -r * r / (a + d);
    const double lm = -a - d;
    if (d >= 0.25 * a) {
        auto F = [h](double l) { return std::expm1(l * h) / l; };
        return (F(lp) - F(lm)) / (lp - lm);
    }
    const double k1 = std::exp(lp * h) * h * phi1(-2.0 * d * h);
    return (-std::expm1(lm * h) - (a + d) * k1) / (r * r);
}

}  // namespace

RootsAtXi char_roots(const ModelSpec& model, double r) {
    if (!(r >= 0.0)) throw DomainError("frequency magnitude must be nonnegative");
    RootsAtXi out;
    out.r = r;
    out.discriminant = model.mu * model.mu - 4.0 * std::pow(r, 2.0 - 4.0 * model.sigma);
    if (r == 0.0) {
        out.lambda_plus = out.lambda_minus = 0.0;
        out.regime = Regime::zero;
        return out;
    }
    const double a = half_damping(model, r);
    double gap;
    if (a > r) {
        const double d = std::sqrt((a - r) * (a + r));
        out.lambda_plus = -r * r / (a + d);
        out.lambda_minus = -a - d;
        out.regime = Regime::real;
        gap = 2.0 * d;
    } else {
        const double w = std::sqrt((r - a) * (r + a));
        out.lambda_plus = std::complex<double>(-a, w);
        out.lambda_minus = std::complex<double>(-a, -w);
        out.regime = Regime::complex;
        gap = 2.0 * w;
    }
    const double scale = std::abs(out.lambda_plus) + std::abs(out.lambda_minus);
    if (gap <= kDegenerateTol * (scale + 1e-300)) out.regime = Regime::degenerate;
    return out;
}

KernelValues kernel_values(const ModelSpec& model, double r, double t, double h) {
    if (!(r >= 0.0)) throw DomainError("frequency magnitude must be nonnegative");
    if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
    if (!(h >= 0.0)) throw DomainError("integration length must be nonnegative");
    KernelValues kv;
    kv.t = t;
    const double a = (r == 0.0) ? 0.0 : half_damping(model, r);
    if (t > 0.0) {
        Core c = core_values(a, r, t);
        kv.k0 = c.k0;
        kv.k1 = c.k1;
        kv.dtk0 = c.dtk0;
        kv.dtk1 = c.dtk1;
    }
    kv.int_k1 = int_k1_impl(a, r, h);
    return kv;
}

double integral_k1(const ModelSpec& model, double r, double h) {
    if (!(r >= 0.0) || !(h >= 0.0)) throw DomainError("integral_k1 requires r >= 0 and h >= 0");
    const double a = (r == 0.0) ? 0.0 : half_damping(model, r);
    return int_k1_impl(a, r, h);
}

double slow_rate(const ModelSpec& model, double r) {
    if (r == 0.0) return 0.0;
    const double a = half_damping(model, r);
    if (a > r) {
        const double d = std::sqrt((a - r) * (a + r));
        return -r * r / (a + d);
    }
    return -a;
}

double ode_residual(const ModelSpec& model, double r, double t, double dt_fd) {
    if (!(dt_fd > 0.0) || !(t >= dt_fd)) throw DomainError("ode_residual requires t >= dt_fd > 0");
    if (r == 0.0) return 0.0;
    const double a = half_damping(model, r);
    const double damp = 2.0 * a;
    auto km = kernel_values(model, r, t - dt_fd, 0.0);
    auto k = kernel_values(model, r, t, 0.0);
    auto kp = kernel_values(model, r, t + dt_fd, 0.0);
    const double h2 = dt_fd * dt_fd;
    auto resid = [&](double wm, double w, double wp) {
        double w2 = (wp - 2.0 * w + wm) / h2;
        double w1 = (wp - wm) / (2.0 * dt_fd);
        return std::abs(w2 + damp * w1 + r * r * w);
    };
    double res = std::max(resid(km.k0, k.k0, kp.k0), resid(km.k1, k.k1, kp.k1));
    return res / (r * r + damp + 1.0);
}

}  // namespace dampwave
