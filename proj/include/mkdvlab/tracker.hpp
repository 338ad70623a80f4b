#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mkdvlab/field.hpp"
#include "mkdvlab/potential.hpp"
#include "mkdvlab/soliton.hpp"

namespace mkdv {

// Extracts soliton parameters from a PDE field: a cheap moment estimator for
// initialization, then a damped Newton solve of the symplectic orthogonality
// conditions <u - eta, eta> = 0 and <u - eta, (x-a) eta> = 0.

struct FitResult {
    SolitonParams params;
    double r1 = 0.0;  // <w, eta>
    double r2 = 0.0;  // <w, (x-a) eta>
    int iterations = 0;
    double deviation_h1 = 0.0;  // ||u - eta(params)||_H1
};

// c ~ (1/2) integral u^2; a ~ circular centroid of the density u^2.
// Throws ZeroFieldError on an all-zero field.
SolitonParams moment_estimate(const RealField& u);

struct FitOptions {
    double tol_factor = 1e-10;  // fit_tol = tol_factor * ||u||_2
    int max_iterations = 50;
    int max_halvings = 30;
    // resolvability guard: iterates with c * dx > c_dx_max are rejected (a
    // profile narrower than the mesh samples to zero and fits vacuously)
    double c_dx_max = 0.5;
};

// Throws NoConvergenceError (with the residual history) when the field has
// left the soliton tube.
FitResult symplectic_fit(const RealField& u, SolitonParams init, const FitOptions& opts = {});

// 2x2 Jacobian d(r1, r2)/d(a, c) of the orthogonality map, row-major.
std::array<double, 4> fit_jacobian(const RealField& u, SolitonParams p);
// Rows rescaled to the da^dc normalization; equals [[0,1],[1,0]] at w = 0.
std::array<double, 4> normalized_fit_jacobian(const RealField& u, SolitonParams p);

struct Snapshot {
    double t;
    RealField u;
};

struct TrackSample {
    double t;
    double a;  // unwrapped by nearest-period continuation
    double c;
    double r1;
    double r2;
    double deviation_h1;
    int iterations;
};

struct TrackResult {
    std::vector<TrackSample> samples;
    std::optional<double> failed_at;  // timestamp of the first non-converged fit
    std::string failure;

    bool complete() const { return !failed_at.has_value(); }
};

// Warm-started fit per snapshot; moment_estimate seeds the first when no
// init is given. A non-converged fit terminates the track with the partial
// result and the failure timestamp.
TrackResult track(const std::vector<Snapshot>& snapshots,
                  std::optional<SolitonParams> init = {}, const FitOptions& opts = {});

struct ModulationResiduals {
    std::vector<double> t;      // interior timestamps
    std::vector<double> rho_a;  // da/dt - c^2 - eps c^{-1} <V eta, (x-a) eta>
    std::vector<double> rho_c;  // dc/dt - eps <V eta, eta>
};

// Centered finite differences of the fitted track against the effective
// right sides; needs >= 3 uniformly spaced samples.
ModulationResiduals modulation_residuals(const std::vector<TrackSample>& samples,
                                         const PotentialSpec& potential, double epsilon);

}  // namespace mkdv
