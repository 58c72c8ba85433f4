#include "dampwave/spectral.hpp"

#include "dampwave/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace dampwave {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const GridSpec& g, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(g.n, g.points_per_axis, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        int dims[3] = {g.points_per_axis, g.points_per_axis, g.points_per_axis};
        auto* buf = fftw_alloc_complex(g.size());
        fftw_plan p = fftw_plan_dft(g.n, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw Error("fftw failed to create a plan");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward_inplace(const GridSpec& grid, const double* in, cplx* out) {
    const std::size_t sz = grid.size();
    for (std::size_t i = 0; i < sz; ++i) out[i] = cplx(in[i], 0.0);
    fftw_execute_dft(PlanCache::instance().get(grid, FFTW_FORWARD), as_fftw(out), as_fftw(out));
    const double s = 1.0 / static_cast<double>(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] *= s;
}

void inverse_inplace(const GridSpec& grid, cplx* data, double* out_real) {
    fftw_execute_dft(PlanCache::instance().get(grid, FFTW_BACKWARD), as_fftw(data), as_fftw(data));
    const std::size_t sz = grid.size();
    for (std::size_t i = 0; i < sz; ++i) out_real[i] = data[i].real();
}

SpectralField forward_transform(const RealField& u) {
    SpectralField U(u.grid);
    forward_inplace(u.grid, u.values.data(), U.coeffs.data());
    return U;
}

RealField inverse_transform(const SpectralField& U, SymmetryCheck check, double sym_tol) {
    if (check == SymmetryCheck::enforce) {
        double defect = U.symmetry_defect();
        if (defect > sym_tol)
            throw DomainError("coefficients are not conjugate-symmetric (defect " +
                              std::to_string(defect) + "); no real inverse");
    }
    std::vector<cplx> work = U.coeffs;
    RealField u(U.grid);
    inverse_inplace(U.grid, work.data(), u.values.data());
    return u;
}

double sobolev_seminorm(const SpectralField& U, double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("sobolev_seminorm requires kappa >= 0");
    const auto& g = U.grid;
    const double dk2 = g.dxi() * g.dxi();
    double acc = 0.0;
    for (std::size_t i = 0; i < U.coeffs.size(); ++i) {
        double a2 = std::norm(U.coeffs[i]);
        if (kappa == 0.0) {
            acc += a2;
            continue;
        }
        long k2 = g.ksq(i);
        if (k2 == 0) continue;
        acc += std::pow(dk2 * static_cast<double>(k2), kappa) * a2;
    }
    return std::sqrt(g.volume() * acc);
}

SpectralField derivative(const SpectralField& U, int axis) {
    const auto& g = U.grid;
    if (axis < 0 || axis >= g.n) throw DomainError("derivative axis out of range");
    SpectralField D(g);
    const int nyq = -g.points_per_axis / 2;
    for (std::size_t i = 0; i < U.coeffs.size(); ++i) {
        int k = g.wavenumber(g.unflatten(i)[axis]);
        if (k == nyq) continue;
        D.coeffs[i] = cplx(0.0, g.dxi() * k) * U.coeffs[i];
    }
    return D;
}

std::vector<RealField> gradient(const RealField& u) {
    auto U = forward_transform(u);
    std::vector<RealField> out;
    for (int d = 0; d < u.grid.n; ++d)
        out.push_back(inverse_transform(derivative(U, d), SymmetryCheck::skip));
    return out;
}

double derivative_tensor_norm(const RealField& u, int k, double m) {
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    if (k == 0) return grid_norm(u, m);
    const auto& g = u.grid;
    // enumerate all ordered axis tuples of length k
    std::vector<SpectralField> layer{forward_transform(u)};
    for (int level = 0; level < k; ++level) {
        std::vector<SpectralField> next;
        for (const auto& S : layer)
            for (int d = 0; d < g.n; ++d) next.push_back(derivative(S, d));
        layer = std::move(next);
    }
    RealField mag(g);
    for (const auto& S : layer) {
        auto comp = inverse_transform(S, SymmetryCheck::skip);
        for (std::size_t i = 0; i < mag.values.size(); ++i) mag.values[i] += comp.values[i] * comp.values[i];
    }
    for (double& v : mag.values) v = std::sqrt(v);
    return grid_norm(mag, m);
}

SpectralField scale_modes(const SpectralField& U, const std::vector<double>& multiplier) {
    if (multiplier.size() != U.coeffs.size()) throw DomainError("multiplier size mismatch");
    SpectralField out(U.grid);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = multiplier[i] * U.coeffs[i];
    return out;
}

std::vector<unsigned char> two_thirds_mask(const GridSpec& grid) {
    std::vector<unsigned char> mask(grid.size(), 1);
    const int cut = grid.points_per_axis / 3;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        auto idx = grid.unflatten(i);
        for (int d = 0; d < grid.n; ++d)
            if (std::abs(grid.wavenumber(idx[d])) > cut) mask[i] = 0;
    }
    return mask;
}

void apply_mask(SpectralField& U, const std::vector<unsigned char>& mask) {
    for (std::size_t i = 0; i < U.coeffs.size(); ++i)
        if (!mask[i]) U.coeffs[i] = cplx(0.0, 0.0);
}

}  // namespace dampwave
