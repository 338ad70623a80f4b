#pragma once

#include "mkdvlab/field.hpp"

namespace mkdv {

// Point on the soliton manifold: position a (modulo the period when sampled
// on a grid) and scale c > 0.
struct SolitonParams {
    double a = 0.0;
    double c = 1.0;
};

// eta(x; a, c) = c sech(c (x - a)). Emits a tail-truncation warning when
// c * half_length < 20 (wraparound error above ~1e-8).
RealField eta(const Grid& grid, SolitonParams p);
RealField d_a_eta(const Grid& grid, SolitonParams p);  // -d/dx eta
RealField d_c_eta(const Grid& grid, SolitonParams p);  // Q(y) + y Q'(y), y = c(x-a)

struct SolitonInvariants {
    double mass;        // integral of eta = pi
    double momentum;    // (1/2) integral of eta^2 = c
    double h0;          // -c^3/3
};
SolitonInvariants invariants_on_soliton(SolitonParams p);

// The closed-form fields J^{-1} d_a eta = -eta and J^{-1} d_c eta =
// c^{-1}(x-a) eta, evaluated directly (not via the grid antiderivative, whose
// zero mode is ambiguous for fields with nonzero mean).
struct SymplecticPairings {
    RealField j_inv_d_a;
    RealField j_inv_d_c;
};
SymplecticPairings symplectic_pairings(const Grid& grid, SolitonParams p);

// (x - a) wrapped into [-l, l), sampled on the grid.
RealField displacement_field(const Grid& grid, double a);

}  // namespace mkdv
