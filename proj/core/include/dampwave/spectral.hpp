#pragma once

#include "dampwave/grid.hpp"

#include <vector>

namespace dampwave {

// Coefficients are c_k = N^{-n} * sum_x u(x) e^{-i xi_k . x}, so the zero mode
// is the box mean and  int |u|^2 = V * sum |c_k|^2  with V the box volume.
SpectralField forward_transform(const RealField& u);

enum class SymmetryCheck { enforce, skip };

// Real part of the inverse transform. With SymmetryCheck::enforce a
// coefficient set whose conjugate-symmetry defect exceeds sym_tol throws.
RealField inverse_transform(const SpectralField& U,
                            SymmetryCheck check = SymmetryCheck::enforce,
                            double sym_tol = 1e-10);

// Raw complex transforms on preallocated buffers (no allocation, no checks).
void forward_inplace(const GridSpec& grid, const double* in, cplx* out);
void inverse_inplace(const GridSpec& grid, cplx* data, double* out_real);

// (V * sum |xi|^{2 kappa} |c_k|^2)^{1/2}
double sobolev_seminorm(const SpectralField& U, double kappa);

// Multiply by i xi_d; the Nyquist entry is dropped.
SpectralField derivative(const SpectralField& U, int axis);
std::vector<RealField> gradient(const RealField& u);

// Frobenius norm of the order-k derivative tensor in L^m (integer k).
double derivative_tensor_norm(const RealField& u, int k, double m);

SpectralField scale_modes(const SpectralField& U, const std::vector<double>& multiplier);

// True for modes with every |k_i| <= N/3.
std::vector<unsigned char> two_thirds_mask(const GridSpec& grid);
void apply_mask(SpectralField& U, const std::vector<unsigned char>& mask);

}  // namespace dampwave
