#pragma once

#include "mkdvlab/field.hpp"

namespace mkdv {

// Transforms use the analytic convention u(x) = sum_m u_hat_m exp(i k_m x)
// with k_m = (pi/l) m, so u_hat are honest Fourier coefficients of u on
// [-l, l): forward(cos(x)) puts 1/2 at k = +-1.
SpectralField forward(const RealField& f);
RealField inverse(const SpectralField& F);

// d^order/dx^order via multiplication by (ik)^order. For odd orders the
// unpaired Nyquist mode is zeroed (convention; it has no well-defined odd
// derivative).
RealField spectral_derivative(const RealField& f, int order);
SpectralField spectral_derivative(const SpectralField& F, int order);

// Periodic inverse of d/dx: divide by ik, zero mode mapped to zero. Defined
// only on mean-zero fields; throws MeanNotZeroError when |mean| exceeds
// tol_mean (default 1e-10 * max|f|). Output has zero mean.
RealField antiderivative(const RealField& f, double tol_mean = -1.0);

// Projection of f^3 onto the retained symmetric band {|m| < n/2}, computed by
// zero-padding to 2n points (exact for a cubic nonlinearity). The input's
// Nyquist mode is excluded from the product band.
RealField dealiased_cube(const RealField& f);
SpectralField dealiased_cube_spectrum(const SpectralField& F);

// Trapezoid rule on the uniform periodic mesh: dx * sum(values).
double quadrature(const RealField& f);
double inner(const RealField& f, const RealField& g);
double mean(const RealField& f);
double l2_norm(const RealField& f);
double max_abs(const RealField& f);

// omega(v1, v2) = <v1, dx^{-1} v2>; requires mean-zero v2.
double symplectic_form(const RealField& v1, const RealField& v2);

double h1_norm(const RealField& f);
// Multiplies f and f_x samples by exp(-alpha * d(x, a)) with the periodicized
// distance d before taking the H1 norm.
double weighted_h1_norm(const RealField& f, double a, double alpha);

// Pointwise helpers built on the kernels layer.
RealField add_scaled(const RealField& a, double s, const RealField& b);
RealField multiply(const RealField& a, const RealField& b);

}  // namespace mkdv
