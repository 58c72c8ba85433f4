#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace dampwave {

using cplx = std::complex<double>;

// Periodic box [-L/2, L/2)^n sampled with N points per axis.
struct GridSpec {
    int n = 2;
    int points_per_axis = 64;
    double box_length = 1.0;

    void validate() const;

    std::size_t size() const;
    double spacing() const { return box_length / points_per_axis; }
    double cell_volume() const;
    double volume() const;
    double dxi() const;  // lattice spacing in frequency, 2*pi/L

    // Integer wavenumber of FFT-ordered index i along one axis.
    int wavenumber(int i) const { return i < points_per_axis / 2 ? i : i - points_per_axis; }
    // Physical coordinate of index i along one axis.
    double coordinate(int i) const { return -0.5 * box_length + i * spacing(); }

    // Per-axis indices of a row-major flat index (first axis slowest).
    std::array<int, 3> unflatten(std::size_t flat) const;
    // Sum of squared integer wavenumbers at a flat index.
    long ksq(std::size_t flat) const;
    long max_ksq() const;
    // Flat index of the mode -k.
    std::size_t mirror(std::size_t flat) const;

    bool operator==(const GridSpec& o) const {
        return n == o.n && points_per_axis == o.points_per_axis && box_length == o.box_length;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

struct RealField {
    GridSpec grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
    RealField(const GridSpec& g, std::vector<double> v);

    bool all_finite() const;
    double max_abs() const;
};

// Fourier-series coefficients over the lattice, FFT order.
struct SpectralField {
    GridSpec grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.size(), cplx(0.0, 0.0)) {}

    // max |c_k - conj(c_{-k})| relative to max |c_k|
    double symmetry_defect() const;
};

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double c, const RealField& a);

// |xi|^2 at every lattice point.
std::vector<double> xi_squared(const GridSpec& grid);

// |xi|^{2s}; the zero mode is 1 for s = 0 and 0 otherwise.
std::vector<double> frac_symbol(const GridSpec& grid, double s);

// (sum |u|^m dV)^{1/m}; m = infinity gives the max norm.
double grid_norm(const RealField& u, double m);

}  // namespace dampwave
