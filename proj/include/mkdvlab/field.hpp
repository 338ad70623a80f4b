#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "mkdvlab/grid.hpp"

namespace mkdv {

using cplx = std::complex<double>;

// Real samples u(x_j) on a grid.
struct RealField {
    Grid grid;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), v(static_cast<std::size_t>(g.n), 0.0) {}
    RealField(const Grid& g, std::vector<double> values) : grid(g), v(std::move(values)) {
        if (v.size() != static_cast<std::size_t>(g.n))
            throw std::invalid_argument("RealField: sample count does not match grid");
    }

    template <class F>
    static RealField sample(const Grid& g, F&& f) {
        RealField out(g);
        for (int j = 0; j < g.n; ++j) out.v[static_cast<std::size_t>(j)] = f(g.x(j));
        return out;
    }

    int n() const { return grid.n; }
};

// Fourier coefficients u_hat(k_j) in FFT storage order; conjugate-symmetric
// whenever the field it represents is real.
struct SpectralField {
    Grid grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), c(static_cast<std::size_t>(g.n), cplx(0.0)) {}
    SpectralField(const Grid& g, std::vector<cplx> coeffs) : grid(g), c(std::move(coeffs)) {
        if (c.size() != static_cast<std::size_t>(g.n))
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }

    int n() const { return grid.n; }
};

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("grids do not match");
}

}  // namespace mkdv
