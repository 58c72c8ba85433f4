#include "dampwave/grid.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dampwave {

void GridSpec::validate() const {
    if (n < 1 || n > 3)
        throw DomainError("grid dimension must be 1, 2 or 3 (got " + std::to_string(n) + ")");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        throw DomainError("points_per_axis must be an even integer >= 8 (got " +
                          std::to_string(points_per_axis) + ")");
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw DomainError("box_length must be positive and finite");
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(points_per_axis);
    return s;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), n); }
double GridSpec::volume() const { return std::pow(box_length, n); }
double GridSpec::dxi() const { return 2.0 * M_PI / box_length; }

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    const auto N = static_cast<std::size_t>(points_per_axis);
    for (int d = n - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % N);
        flat /= N;
    }
    return idx;
}

long GridSpec::ksq(std::size_t flat) const {
    auto idx = unflatten(flat);
    long s = 0;
    for (int d = 0; d < n; ++d) {
        long k = wavenumber(idx[d]);
        s += k * k;
    }
    return s;
}

long GridSpec::max_ksq() const {
    long h = points_per_axis / 2;
    return n * h * h;
}

std::size_t GridSpec::mirror(std::size_t flat) const {
    auto idx = unflatten(flat);
    const int N = points_per_axis;
    std::size_t out = 0;
    for (int d = 0; d < n; ++d) out = out * N + static_cast<std::size_t>((N - idx[d]) % N);
    return out;
}

RealField::RealField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw DomainError("field value count does not match the grid");
}

bool RealField::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); });
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double x : values) {
        if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(x));
    }
    return m;
}

double SpectralField::symmetry_defect() const {
    double scale = 0.0, defect = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        scale = std::max(scale, std::abs(coeffs[i]));
        defect = std::max(defect, std::abs(coeffs[i] - std::conj(coeffs[grid.mirror(i)])));
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

static void require_same(const RealField& a, const RealField& b) {
    if (a.grid != b.grid) throw DomainError("fields live on different grids");
}

RealField operator+(const RealField& a, const RealField& b) {
    require_same(a, b);
    RealField r(a.grid);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] + b.values[i];
    return r;
}

RealField operator-(const RealField& a, const RealField& b) {
    require_same(a, b);
    RealField r(a.grid);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] - b.values[i];
    return r;
}

RealField operator*(double c, const RealField& a) {
    RealField r(a.grid);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = c * a.values[i];
    return r;
}

std::vector<double> xi_squared(const GridSpec& grid) {
    const double dk2 = grid.dxi() * grid.dxi();
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dk2 * static_cast<double>(grid.ksq(i));
    return out;
}

std::vector<double> frac_symbol(const GridSpec& grid, double s) {
    if (!(s >= 0.0)) throw DomainError("frac_symbol exponent must be nonnegative");
    auto out = xi_squared(grid);
    for (double& v : out) {
        if (s == 0.0)
            v = 1.0;
        else
            v = (v == 0.0) ? 0.0 : std::pow(v, s);
    }
    return out;
}

double grid_norm(const RealField& u, double m) {
    if (!(m >= 1.0)) throw DomainError("grid_norm requires m >= 1");
    if (std::isinf(m)) return u.max_abs();
    const double dv = u.grid.cell_volume();
    double acc = 0.0;
    if (m == 2.0) {
        for (double x : u.values) acc += x * x;
        return std::sqrt(acc * dv);
    }
    if (m == 1.0) {
        for (double x : u.values) acc += std::abs(x);
        return acc * dv;
    }
    // scale by the max to keep |u|^m representable
    const double top = u.max_abs();
    if (top == 0.0) return 0.0;
    for (double x : u.values) acc += std::pow(std::abs(x) / top, m);
    return top * std::pow(acc * dv, 1.0 / m);
}

}  // namespace dampwave
