#pragma once

#include <vector>

#include "mkdvlab/potential.hpp"
#include "mkdvlab/soliton.hpp"

namespace mkdv {

// Parameter ODEs for the soliton track:
//   da/dt = c^2 + eps c^{-1} <V eta, (x-a) eta>
//   dc/dt = eps <V eta, eta>
// The brackets are quadratures in the scaled variable y = c(x-a), so the
// module runs standalone (no Grid) at arbitrary (a, c).
struct EffectiveConfig {
    double epsilon = 0.0;
    PotentialSpec potential;
    double dt = 1e-3;
    double t_final = 0.0;
    double bracket_window = 40.0;  // half-width in y
    int bracket_points = 2048;
    double c_floor = 1e-3;
    int stride = 1;  // sample emission interval in steps
};

// <V eta, eta> = c * integral of V(a + y/c) sech^2(y) dy
double bracket_vee(const PotentialSpec& potential, SolitonParams p,
                   double window = 40.0, int points = 2048);
// <V eta, (x-a) eta> = integral of V(a + y/c) y sech^2(y) dy
double bracket_vxe(const PotentialSpec& potential, SolitonParams p,
                   double window = 40.0, int points = 2048);

struct OdeRhs {
    double da_dt;
    double dc_dt;
};
// Throws ScaleCollapseError when c <= c_floor.
OdeRhs effective_rhs(const EffectiveConfig& config, SolitonParams p, double t = 0.0);

struct OdeSample {
    double t;
    double a;  // unwrapped (real line)
    double c;
    double vee;
    double vxe;
};

std::vector<OdeSample> integrate_effective(const EffectiveConfig& config, SolitonParams p0);

}  // namespace mkdv
