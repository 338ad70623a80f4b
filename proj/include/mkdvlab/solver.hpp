#pragma once

#include <functional>

#include "mkdvlab/field.hpp"
#include "mkdvlab/potential.hpp"

namespace mkdv {

// Time-evolves d/dT U = d/dX(-d^2/dX^2 U - 2 U^3) + gamma V(X) U by Fourier
// integrating-factor RK4: substitute v_hat = exp(-i k^3 t) u_hat so the k^3
// dispersion is absorbed exactly, then apply classical RK4 to v_hat.
struct SolverConfig {
    Grid grid;
    PotentialSpec potential;
    double gamma = 0.0;  // 1 in the rescaled frame, epsilon in the physical frame
    double dt = 1e-3;
    double t_final = 0.0;
    int snapshot_every = 1;
    bool dealias = true;
    // Integrating-factor RK4 has weak resonant instabilities in the far
    // spectral tail (linear phase k^3 dt >> 1 per step interacting with the
    // RK4 stage structure); modes with |k| > band_fraction * k_max are zeroed
    // each step. Solutions must stay band-limited below the cutoff, which
    // smooth soliton runs satisfy by many orders of magnitude. 1.0 disables.
    double band_fraction = 0.5;
    bool disable_nonlinearity = false;  // test hook: drop the u^3 term

    void validate() const;  // throws std::invalid_argument
    // Advisory bound on dt from the non-stiff terms (the integrating factor
    // removes the k^3 stiffness): 1 / (k_max (6 max|u0|^2 + gamma sup|V|) + 1).
    double dt_suggestion(const RealField& u0) const;
};

struct EvolutionState {
    double t = 0.0;
    SpectralField u_hat;
    long step_count = 0;
};

// Non-stiff right side N(u) = -2 d/dx(u^3) + gamma V u in spectral form.
// Throws NonFiniteError if the output is not finite (blow-up detection).
SpectralField nonlinear_rhs(const SpectralField& u_hat, const PotentialSpec& potential,
                            double gamma, bool dealias = true);

// One integrating-factor RK4 step; preserves conjugate symmetry (symmetrized
// defensively after the update).
EvolutionState step(const EvolutionState& state, const SolverConfig& config);

using SnapshotSink = std::function<void(double t, const RealField& u)>;

// Runs to t_final, invoking the sink with the initial state, every
// snapshot_every-th step, and at t_final. Deterministic given the config.
EvolutionState evolve(const RealField& u0, const SolverConfig& config,
                      const SnapshotSink& sink = {});

}  // namespace mkdv
