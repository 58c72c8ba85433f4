#pragma once

#include <complex>
#include <string>

namespace dampwave {

// u_tt - Laplace u + mu (-Laplace)^sigma u_t = f(u) in n space dimensions.
struct ModelSpec {
    int n = 2;
    double sigma = 0.5;
    double mu = 2.0;

    void validate() const;
};

enum class Regime { real, complex, degenerate, zero };
std::string to_string(Regime r);

struct RootsAtXi {
    double r = 0.0;
    std::complex<double> lambda_plus;
    std::complex<double> lambda_minus;
    double discriminant = 0.0;  // mu^2 - 4 r^{2(1-2 sigma)}
    Regime regime = Regime::zero;
};

// K0 and K1 solve w'' + mu r^{2 sigma} w' + r^2 w = 0 with (w, w')(0) equal to
// (1, 0) and (0, 1) respectively. int_k1 is the integral of K1 over [0, h].
struct KernelValues {
    double k0 = 1.0;
    double k1 = 0.0;
    double dtk0 = 0.0;
    double dtk1 = 1.0;
    double int_k1 = 0.0;
    double t = 0.0;
};

inline constexpr double kDegenerateTol = 1e-8;
inline constexpr double kSeriesCut = 1e-3;

RootsAtXi char_roots(const ModelSpec& model, double r);

KernelValues kernel_values(const ModelSpec& model, double r, double t, double h_for_integral);

// Integral of K1 over [0, h] alone.
double integral_k1(const ModelSpec& model, double r, double h);

// Slowest decay rate Re(lambda_plus) at frequency r (nonpositive).
double slow_rate(const ModelSpec& model, double r);

double ode_residual(const ModelSpec& model, double r, double t, double dt_fd);

}  // namespace dampwave
