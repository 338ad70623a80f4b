#pragma once

#include <cmath>
#include <stdexcept>

namespace mkdv {

// Uniform periodic mesh on [-l, l) with n points (power of two). Wavenumbers
// follow FFT storage order: slot j carries integer mode m_j = j for j < n/2
// and m_j = j - n otherwise, so the unpaired Nyquist mode sits at m = -n/2.
struct Grid {
    int n = 0;
    double half_length = 0.0;
    double dx = 0.0;

    Grid() = default;
    Grid(int n_, double half_length_) : n(n_), half_length(half_length_) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two, n >= 16");
        if (!(half_length > 0.0))
            throw std::invalid_argument("Grid: half_length must be positive");
        dx = 2.0 * half_length / n;
    }

    double x(int j) const { return -half_length + j * dx; }
    int mode(int j) const { return j < n / 2 ? j : j - n; }
    double k(int j) const { return M_PI / half_length * mode(j); }
    double k_max() const { return M_PI / half_length * (n / 2); }
    double length() const { return 2.0 * half_length; }

    // Signed displacement wrapped into [-l, l); used wherever (x - a) appears
    // on the circle.
    double wrap(double displacement) const {
        const double period = length();
        double d = std::remainder(displacement, period);
        if (d >= half_length) d -= period;
        if (d < -half_length) d += period;
        return d;
    }

    bool operator==(const Grid&) const = default;
};

}  // namespace mkdv
