#include "mkdvlab/solver.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mkdvlab/errors.hpp"
#include "mkdvlab/kernels.hpp"
#include "mkdvlab/spectral.hpp"
#include "mkdvlab/warnings.hpp"

namespace mkdv {
namespace {

using kernels::cplx;

// Per-run precomputed data: potential samples, derivative symbol with the
// Nyquist mode excluded, and the half/full-step dispersion phases. The
// Nyquist phase is set to 1 and the state's Nyquist mode is zeroed up front;
// an unpaired mode cannot rotate under the odd symbol and stay real.
struct StepWorkspace {
    RealField v_samples;
    std::vector<cplx> deriv;    // -2 * ik, Nyquist zeroed
    std::vector<cplx> e_half;   // exp(i k^3 dt/2)
    std::vector<cplx> e_full;   // exp(i k^3 dt)
    std::vector<cplx> band;     // 1 inside the retained band, 0 outside
    double dt = 0.0;

    StepWorkspace(const SolverConfig& cfg) : v_samples(cfg.potential.sample(cfg.grid)) {
        const int n = cfg.grid.n;
        band.assign(static_cast<std::size_t>(n), cplx(1.0));
        const double cutoff = cfg.band_fraction * (n / 2);
        for (int j = 0; j < n; ++j)
            if (std::abs(cfg.grid.mode(j)) > cutoff) band[static_cast<std::size_t>(j)] = cplx(0.0);
        rebuild_phases(cfg.grid, cfg.dt);
    }

    void rebuild_phases(const Grid& g, double dt_) {
        dt = dt_;
        const std::size_t n = static_cast<std::size_t>(g.n);
        deriv.assign(n, cplx(0.0));
        e_half.assign(n, cplx(1.0));
        e_full.assign(n, cplx(1.0));
        for (int j = 0; j < g.n; ++j) {
            const double k = g.k(j);
            if (g.mode(j) != -g.n / 2) deriv[static_cast<std::size_t>(j)] = cplx(0.0, -2.0 * k);
            const double theta = k * k * k * dt / 2.0;
            if (g.mode(j) != -g.n / 2) {
                e_half[static_cast<std::size_t>(j)] = std::polar(1.0, theta);
                e_full[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * theta);
            }
        }
    }
};

// aliased cube for the dealias=false path: plain pointwise u^3
RealField pointwise_cube(const SpectralField& u_hat) {
    RealField u = inverse(u_hat);
    RealField out(u.grid);
    kernels::cube(u.v, out.v);
    return out;
}

SpectralField rhs_impl(const SpectralField& u_hat, const StepWorkspace& ws,
                       const SolverConfig& cfg) {
    SpectralField out(u_hat.grid);
    if (!cfg.disable_nonlinearity) {
        SpectralField cube_hat = cfg.dealias ? dealiased_cube_spectrum(u_hat)
                                             : forward(pointwise_cube(u_hat));
        kernels::cmul(ws.deriv, cube_hat.c, out.c);
    }
    if (cfg.gamma != 0.0) {
        RealField u = inverse(u_hat);
        RealField vu = multiply(ws.v_samples, u);
        SpectralField vu_hat = forward(vu);
        kernels::cadd_scaled(out.c, cplx(cfg.gamma), vu_hat.c, out.c);
    }
    if (!kernels::all_finite(out.c))
        throw NonFiniteError("nonlinear_rhs: non-finite coefficients (blow-up?)");
    return out;
}

}  // namespace

void SolverConfig::validate() const {
    if (dt == 0.0) throw std::invalid_argument("SolverConfig: dt must be nonzero");
    if (t_final != 0.0 && t_final / dt < 0.0)
        throw std::invalid_argument("SolverConfig: t_final and dt must have the same sign");
    if (snapshot_every < 1) throw std::invalid_argument("SolverConfig: snapshot_every >= 1");
    if (!(band_fraction > 0.0) || band_fraction > 1.0)
        throw std::invalid_argument("SolverConfig: band_fraction in (0, 1]");
    if (!potential.is_periodic(grid.half_length))
        throw std::invalid_argument(
            "SolverConfig: potential is not periodic on the grid (frequency * l / pi "
            "must be an integer; linear terms are rejected)");
}

double SolverConfig::dt_suggestion(const RealField& u0) const {
    const double sup = max_abs(u0);
    const double vbound = std::abs(gamma) * potential.sup_bound();
    return 1.0 / (grid.k_max() * (6.0 * sup * sup + vbound) + 1.0);
}

SpectralField nonlinear_rhs(const SpectralField& u_hat, const PotentialSpec& potential,
                            double gamma, bool dealias) {
    SolverConfig cfg;
    cfg.grid = u_hat.grid;
    cfg.potential = potential;
    cfg.gamma = gamma;
    cfg.dealias = dealias;
    StepWorkspace ws(cfg);
    return rhs_impl(u_hat, ws, cfg);
}

namespace {

EvolutionState step_with(const EvolutionState& state, const SolverConfig& cfg,
                         const StepWorkspace& ws) {
    const double dt = ws.dt;
    const SpectralField& u = state.u_hat;
    const Grid& g = u.grid;

    SpectralField g1 = rhs_impl(u, ws, cfg);

    SpectralField s2(g);
    kernels::cadd_scaled(u.c, cplx(dt / 2.0), g1.c, s2.c);
    kernels::cmul(ws.e_half, s2.c, s2.c);
    SpectralField g2 = rhs_impl(s2, ws, cfg);

    SpectralField eu(g);  // e_half * u
    kernels::cmul(ws.e_half, u.c, eu.c);
    SpectralField s3(g);
    kernels::cadd_scaled(eu.c, cplx(dt / 2.0), g2.c, s3.c);
    SpectralField g3 = rhs_impl(s3, ws, cfg);

    SpectralField e2u(g);  // e_full * u
    kernels::cmul(ws.e_full, u.c, e2u.c);
    SpectralField s4(g);
    SpectralField eg3(g);
    kernels::cmul(ws.e_half, g3.c, eg3.c);
    kernels::cadd_scaled(e2u.c, cplx(dt), eg3.c, s4.c);
    SpectralField g4 = rhs_impl(s4, ws, cfg);

    // u_{n+1} = E2 u + dt/6 (E2 g1 + 2 E1 g2 + 2 E1 g3 + g4)
    SpectralField e2g1(g);
    kernels::cmul(ws.e_full, g1.c, e2g1.c);
    SpectralField eg2(g);
    kernels::cmul(ws.e_half, g2.c, eg2.c);
    EvolutionState next{state.t + dt, SpectralField(g), state.step_count + 1};
    kernels::rk4_combine(e2u.c, e2g1.c, eg2.c, eg3.c, g4.c, dt, next.u_hat.c);
    kernels::cmul(ws.band, next.u_hat.c, next.u_hat.c);
    kernels::symmetrize_spectrum(next.u_hat.c);
    if (!kernels::all_finite(next.u_hat.c))
        throw NonFiniteError("step: non-finite state", next.t, {});
    return next;
}

}  // namespace

EvolutionState step(const EvolutionState& state, const SolverConfig& config) {
    StepWorkspace ws(config);
    return step_with(state, config, ws);
}

EvolutionState evolve(const RealField& u0, const SolverConfig& config, const SnapshotSink& sink) {
    config.validate();
    require_same_grid(u0.grid, config.grid);

    const double suggestion = config.dt_suggestion(u0);
    if (std::abs(config.dt) > suggestion)
        warn("dt = " + std::to_string(config.dt) + " exceeds the stability advisory " +
             std::to_string(suggestion));

    EvolutionState state{0.0, forward(u0), 0};
    state.u_hat.c[static_cast<std::size_t>(config.grid.n / 2)] = cplx(0.0);
    kernels::symmetrize_spectrum(state.u_hat.c);

    StepWorkspace ws(config);
    kernels::cmul(ws.band, state.u_hat.c, state.u_hat.c);
    std::vector<std::pair<double, double>> sup_history;
    auto emit = [&](const EvolutionState& s) {
        RealField u = inverse(s.u_hat);
        sup_history.emplace_back(s.t, max_abs(u));
        if (sup_history.size() > 64) sup_history.erase(sup_history.begin());
        if (sink) sink(s.t, u);
    };

    emit(state);
    if (config.t_final == 0.0) return state;

    const double dt = config.dt;
    const long nfull = static_cast<long>(std::floor(config.t_final / dt + 1e-9));
    const double remainder = config.t_final - nfull * dt;
    const bool has_tail = std::abs(remainder) > 1e-12 * std::abs(dt);

    try {
        for (long i = 0; i < nfull; ++i) {
            state = step_with(state, config, ws);
            state.t = (i + 1) * dt;  // avoid accumulation drift
            const bool is_final = !has_tail && i == nfull - 1;
            if (state.step_count % config.snapshot_every == 0 && !is_final) emit(state);
        }
        if (has_tail) {
            StepWorkspace tail(config);
            tail.rebuild_phases(config.grid, remainder);
            state = step_with(state, config, tail);
            state.t = config.t_final;
        } else {
            state.t = config.t_final;
        }
        emit(state);
    } catch (NonFiniteError& e) {
        throw NonFiniteError(std::string(e.what()) + " at t = " + std::to_string(state.t),
                             state.t, sup_history);
    }
    return state;
}

}  // namespace mkdv
