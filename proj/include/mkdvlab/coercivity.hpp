#pragma once

#include "mkdvlab/field.hpp"
#include "mkdvlab/soliton.hpp"

namespace mkdv {

// Minimum of <L w, w> / ||w||_H1^2 over {w : <w, eta> = <w, (x-a) eta> = 0},
// the constant behind the energy spectral estimate. Computed by inverse power
// iteration on the pencil (P L P, 1 - d^2/dx^2) interleaved with projection
// onto the constraint subspace; inner solves by preconditioned CG.
struct CoercivityOptions {
    double tol = 1e-8;
    int max_iterations = 500;
    double cg_tol = 1e-12;
    int cg_max_iterations = 5000;
    unsigned seed = 20347;
};

double coercivity_estimate(SolitonParams p, const Grid& grid,
                           const CoercivityOptions& opts = {});

// Dense cross-check (forms the operator as a matrix; n <= 256).
double coercivity_estimate_dense(SolitonParams p, const Grid& grid);

}  // namespace mkdv
