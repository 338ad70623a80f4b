#include "mkdvlab/spectral.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mkdvlab/errors.hpp"
#include "mkdvlab/fft.hpp"
#include "mkdvlab/kernels.hpp"

namespace mkdv {
namespace {

// (-1)^m phase relating FFTW's index-space transform to coefficients with
// respect to exp(i k x) on [-l, l): exp(-i k_m x_j) = (-1)^m exp(-2 pi i mj/n).
void apply_alternating(std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t n = in.size();
    for (std::size_t j = 0; j < n; ++j) out[j] = (j % 2 == 0) ? in[j] : -in[j];
}

std::vector<cplx> to_complex(const std::vector<double>& v) {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = cplx(v[i], 0.0);
    return out;
}

}  // namespace

SpectralField forward(const RealField& f) {
    const int n = f.n();
    SpectralField out(f.grid);
    std::vector<cplx> buf = to_complex(f.v);
    std::vector<cplx> raw(static_cast<std::size_t>(n));
    fft_for(n).forward(buf, raw);
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? scale : -scale;
        out.c[static_cast<std::size_t>(j)] = sign * raw[static_cast<std::size_t>(j)];
    }
    return out;
}

RealField inverse(const SpectralField& F) {
    const int n = F.n();
    std::vector<cplx> phased(static_cast<std::size_t>(n));
    apply_alternating(F.c, phased);
    std::vector<cplx> raw(static_cast<std::size_t>(n));
    fft_for(n).backward(phased, raw);
    RealField out(F.grid);
    for (int j = 0; j < n; ++j) out.v[static_cast<std::size_t>(j)] = raw[static_cast<std::size_t>(j)].real();
    return out;
}

SpectralField spectral_derivative(const SpectralField& F, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("spectral_derivative: order must be in {1,2,3}");
    const int n = F.n();
    SpectralField out(F.grid);
    for (int j = 0; j < n; ++j) {
        const double k = F.grid.k(j);
        // exact symbols: (ik), (ik)^2 = -k^2, (ik)^3 = -i k^3
        cplx sym;
        switch (order) {
            case 1: sym = cplx(0.0, k); break;
            case 2: sym = cplx(-k * k, 0.0); break;
            default: sym = cplx(0.0, -k * k * k); break;
        }
        out.c[static_cast<std::size_t>(j)] = sym * F.c[static_cast<std::size_t>(j)];
    }
    if (order % 2 == 1) out.c[static_cast<std::size_t>(n / 2)] = cplx(0.0);
    return out;
}

RealField spectral_derivative(const RealField& f, int order) {
    return inverse(spectral_derivative(forward(f), order));
}

RealField antiderivative(const RealField& f, double tol_mean) {
    const double sup = max_abs(f);
    if (tol_mean < 0.0) tol_mean = 1e-10 * sup;
    const double m = mean(f);
    if (std::abs(m) > tol_mean && sup > 0.0)
        throw MeanNotZeroError("antiderivative: field mean " + std::to_string(m) +
                               " exceeds tolerance " + std::to_string(tol_mean));
    SpectralField F = forward(f);
    const int n = F.n();
    F.c[0] = cplx(0.0);
    for (int j = 1; j < n; ++j)
        F.c[static_cast<std::size_t>(j)] /= cplx(0.0, F.grid.k(j));
    F.c[static_cast<std::size_t>(n / 2)] = cplx(0.0);  // odd symbol, as in the derivative
    return inverse(F);
}

SpectralField dealiased_cube_spectrum(const SpectralField& F) {
    const int n = F.n();
    const int nf = 2 * n;
    // zero-pad to the fine band, dropping the unpaired input Nyquist mode
    std::vector<cplx> fine(static_cast<std::size_t>(nf), cplx(0.0));
    for (int j = 0; j < n; ++j) {
        const int m = F.grid.mode(j);
        if (m == -n / 2) continue;
        const int slot = m >= 0 ? m : m + nf;
        // phase convention on the fine grid: multiply by (-1)^m before the
        // index-space backward transform
        fine[static_cast<std::size_t>(slot)] =
            (m % 2 == 0 ? 1.0 : -1.0) * F.c[static_cast<std::size_t>(j)];
    }
    std::vector<cplx> fine_phys(static_cast<std::size_t>(nf));
    fft_for(nf).backward(fine, fine_phys);
    for (auto& z : fine_phys) {
        const double r = z.real();
        z = cplx(r * r * r, 0.0);
    }
    std::vector<cplx> fine_hat(static_cast<std::size_t>(nf));
    fft_for(nf).forward(fine_phys, fine_hat);
    SpectralField out(F.grid);
    const double scale = 1.0 / nf;
    for (int j = 0; j < n; ++j) {
        const int m = F.grid.mode(j);
        if (m == -n / 2) {
            out.c[static_cast<std::size_t>(j)] = cplx(0.0);
            continue;
        }
        const int slot = m >= 0 ? m : m + nf;
        const double sign = (m % 2 == 0) ? scale : -scale;
        out.c[static_cast<std::size_t>(j)] = sign * fine_hat[static_cast<std::size_t>(slot)];
    }
    return out;
}

RealField dealiased_cube(const RealField& f) {
    return inverse(dealiased_cube_spectrum(forward(f)));
}

double quadrature(const RealField& f) { return f.grid.dx * kernels::sum(f.v); }

double inner(const RealField& f, const RealField& g) {
    require_same_grid(f.grid, g.grid);
    return f.grid.dx * kernels::dot(f.v, g.v);
}

double mean(const RealField& f) { return kernels::sum(f.v) / f.n(); }

double l2_norm(const RealField& f) {
    return std::sqrt(f.grid.dx * kernels::dot(f.v, f.v));
}

double max_abs(const RealField& f) { return kernels::max_abs(std::span<const double>(f.v)); }

double symplectic_form(const RealField& v1, const RealField& v2) {
    require_same_grid(v1.grid, v2.grid);
    return inner(v1, antiderivative(v2));
}

double h1_norm(const RealField& f) {
    const RealField fx = spectral_derivative(f, 1);
    return std::sqrt(f.grid.dx * (kernels::dot(f.v, f.v) + kernels::dot(fx.v, fx.v)));
}

double weighted_h1_norm(const RealField& f, double a, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("weighted_h1_norm: alpha must be positive");
    const RealField fx = spectral_derivative(f, 1);
    std::vector<double> w(f.v.size());
    for (int j = 0; j < f.n(); ++j) {
        const double d = std::abs(f.grid.wrap(f.grid.x(j) - a));
        w[static_cast<std::size_t>(j)] = std::exp(-2.0 * alpha * d);  // weight squared
    }
    const double s = kernels::dot3(f.v, f.v, w) + kernels::dot3(fx.v, fx.v, w);
    return std::sqrt(f.grid.dx * s);
}

RealField add_scaled(const RealField& a, double s, const RealField& b) {
    require_same_grid(a.grid, b.grid);
    RealField out(a.grid);
    kernels::add_scaled(a.v, s, b.v, out.v);
    return out;
}

RealField multiply(const RealField& a, const RealField& b) {
    require_same_grid(a.grid, b.grid);
    RealField out(a.grid);
    kernels::multiply(a.v, b.v, out.v);
    return out;
}

}  // namespace mkdv
