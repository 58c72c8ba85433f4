#pragma once

#include "dampwave/kernels.hpp"
#include "dampwave/linear.hpp"
#include "dampwave/series.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace dampwave {

// Radial Fourier profile g(|xi|) of a radial function on R^n, unitary
// convention g(xi) = (2 pi)^{-n/2} int v(x) e^{-i x.xi} dx.
class RadialProfile {
public:
    enum class Kind { zero, gaussian, tabulated, bump };

    static RadialProfile zero();
    // v(x) = amplitude * exp(-|x|^2 / (2 width^2))
    static RadialProfile gaussian(int n, double amplitude, double width);
    // Values on a uniform radial grid [0, r_max], cubic B-spline interpolation.
    static RadialProfile tabulated(std::vector<double> samples, double r_max, double tail_bound = 0.0);
    // v(x) = amplitude * exp(1 - 1/(1 - (|x|/radius)^2)) inside the ball;
    // transformed by a numerical Hankel transform and tabulated.
    static RadialProfile bump(int n, double amplitude, double radius, std::size_t samples = 4097);

    double operator()(double r) const;
    Kind kind() const { return kind_; }
    double r_max() const { return r_max_; }
    double tail_bound() const { return tail_bound_; }
    bool is_zero() const { return kind_ == Kind::zero; }

private:
    Kind kind_ = Kind::zero;
    double r_max_ = 0.0;
    double tail_bound_ = 0.0;
    std::shared_ptr<const std::function<double(double)>> eval_;
};

double unit_sphere_area(int n);

// ||d_t^j v(t)||_{H^kappa-dot} on R^n for data with radial transforms v0hat, v1hat.
double radial_norm(const ModelSpec& model, int j, double kappa, const RadialProfile& v0hat,
                   const RadialProfile& v1hat, double t);

TimeSeries decay_series_oracle(const ModelSpec& model, const RadialProfile& v0hat,
                               const RadialProfile& v1hat, const std::vector<double>& times,
                               const Quantity& q);

}  // namespace dampwave
