#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mkdvlab/field.hpp"

namespace mkdv {

// Symbolic external potential: a finite sum of sinusoidal terms with exact
// derivatives, so config files fully determine runs and V' is never
// finite-differenced inside the dynamics. The linear waveform (V = amp * x)
// exists for effective-dynamics unit tests only; it is non-periodic and the
// PDE solver rejects it.
enum class Waveform { sin, cos, cos2, linear };

struct PotentialTerm {
    double amp = 0.0;
    Waveform waveform = Waveform::cos;
    double freq = 0.0;   // radians per unit length; ignored for linear
    double phase = 0.0;  // ignored for linear
};

struct PotentialSpec {
    std::vector<PotentialTerm> terms;

    double eval(double x) const;
    double eval_derivative(double x) const;
    RealField sample(const Grid& grid) const;

    // Upper bounds: sup|V| <= sum |amp| and sup|V'| <= sum |amp| * freq_eff
    // (freq_eff = freq for sin/cos, same for cos2 since
    // d/dx cos^2(wx) = -w sin(2wx)). Infinite for linear terms.
    double sup_bound() const;
    double derivative_sup_bound() const;
    double c1_bound() const;  // sup|V| + sup|V'|

    // Every term 2l-periodic: effective frequency * l / pi integral (cos2
    // oscillates at twice its nominal frequency).
    bool is_periodic(double half_length) const;

    // V(s x): frequencies multiplied by s (linear amplitudes too). Used to
    // carry a potential given in rescaled coordinates into the physical frame
    // with s = eps^{1/3}.
    PotentialSpec scaled_coordinates(double s) const;

    static PotentialSpec zero();
    static PotentialSpec constant(double kappa);
    static PotentialSpec linear_x(double slope = 1.0);
    // "paper-v1": -10 cos^2(6x) + 6 sin(10x); "paper-v2": 8 cos^2(4x) - 4 sin(2x)
    static PotentialSpec preset(std::string_view name);
    static bool is_preset(std::string_view name);
};

std::string waveform_name(Waveform w);
Waveform waveform_from_name(std::string_view name);

}  // namespace mkdv
