#include "mkdvlab/effective.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mkdvlab/errors.hpp"

namespace mkdv {
namespace {

// Midpoint rule in y over [-window, window]; the integrand decays like
// exp(-2|y|), so the truncation error is ~exp(-2 window) and the rule is
// spectrally accurate for the sinusoidal V in use.
template <class Weight>
double bracket_quadrature(const PotentialSpec& potential, SolitonParams p, double window,
                          int points, Weight&& weight) {
    if (!(p.c > 0.0)) throw std::invalid_argument("bracket: scale c must be positive");
    if (points < 2) throw std::invalid_argument("bracket: need at least 2 points");
    const double dy = 2.0 * window / points;
    double s = 0.0;
    for (int i = 0; i < points; ++i) {
        const double y = -window + (i + 0.5) * dy;
        const double sech = 1.0 / std::cosh(y);
        s += potential.eval(p.a + y / p.c) * weight(y) * sech * sech;
    }
    return s * dy;
}

}  // namespace

double bracket_vee(const PotentialSpec& potential, SolitonParams p, double window, int points) {
    return p.c * bracket_quadrature(potential, p, window, points, [](double) { return 1.0; });
}

double bracket_vxe(const PotentialSpec& potential, SolitonParams p, double window, int points) {
    return bracket_quadrature(potential, p, window, points, [](double y) { return y; });
}

OdeRhs effective_rhs(const EffectiveConfig& config, SolitonParams p, double t) {
    if (p.c <= config.c_floor)
        throw ScaleCollapseError(
            "effective dynamics: c = " + std::to_string(p.c) + " fell to the floor " +
                std::to_string(config.c_floor) + " at t = " + std::to_string(t),
            t, p.c);
    if (config.epsilon == 0.0) return {p.c * p.c, 0.0};
    const double vee = bracket_vee(config.potential, p, config.bracket_window,
                                   config.bracket_points);
    const double vxe = bracket_vxe(config.potential, p, config.bracket_window,
                                   config.bracket_points);
    return {p.c * p.c + config.epsilon / p.c * vxe, config.epsilon * vee};
}

std::vector<OdeSample> integrate_effective(const EffectiveConfig& config, SolitonParams p0) {
    if (config.epsilon < 0.0)
        throw std::invalid_argument("integrate_effective: epsilon must be nonnegative");
    if (config.dt == 0.0) throw std::invalid_argument("integrate_effective: dt must be nonzero");
    if (config.t_final != 0.0 && config.t_final / config.dt < 0.0)
        throw std::invalid_argument("integrate_effective: t_final and dt must have same sign");
    if (!(p0.c > config.c_floor))
        throw std::invalid_argument("integrate_effective: initial c must exceed c_floor");
    if (config.stride < 1) throw std::invalid_argument("integrate_effective: stride >= 1");

    const double dt = config.dt;
    const long nfull = static_cast<long>(std::floor(config.t_final / dt + 1e-9));
    const double remainder = config.t_final - nfull * dt;
    const bool has_tail = std::abs(remainder) > 1e-12 * std::abs(dt);

    std::vector<OdeSample> out;
    SolitonParams p = p0;
    auto emit = [&](double t) {
        out.push_back({t, p.a, p.c,
                       bracket_vee(config.potential, p, config.bracket_window,
                                   config.bracket_points),
                       bracket_vxe(config.potential, p, config.bracket_window,
                                   config.bracket_points)});
    };
    auto rk4_step = [&](double t, double h) {
        const OdeRhs k1 = effective_rhs(config, p, t);
        const OdeRhs k2 = effective_rhs(
            config, {p.a + 0.5 * h * k1.da_dt, p.c + 0.5 * h * k1.dc_dt}, t + 0.5 * h);
        const OdeRhs k3 = effective_rhs(
            config, {p.a + 0.5 * h * k2.da_dt, p.c + 0.5 * h * k2.dc_dt}, t + 0.5 * h);
        const OdeRhs k4 =
            effective_rhs(config, {p.a + h * k3.da_dt, p.c + h * k3.dc_dt}, t + h);
        p.a += h / 6.0 * (k1.da_dt + 2.0 * k2.da_dt + 2.0 * k3.da_dt + k4.da_dt);
        p.c += h / 6.0 * (k1.dc_dt + 2.0 * k2.dc_dt + 2.0 * k3.dc_dt + k4.dc_dt);
    };

    emit(0.0);
    if (config.t_final == 0.0) return out;

    for (long i = 0; i < nfull; ++i) {
        rk4_step(i * dt, dt);
        const bool is_final = !has_tail && i == nfull - 1;
        if ((i + 1) % config.stride == 0 && !is_final) emit((i + 1) * dt);
    }
    if (has_tail) rk4_step(nfull * dt, remainder);
    emit(config.t_final);
    return out;
}

}  // namespace mkdv
