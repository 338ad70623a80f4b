#include "mkdvlab/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mkdv {
namespace {

double term_eval(const PotentialTerm& t, double x) {
    switch (t.waveform) {
        case Waveform::sin: return t.amp * std::sin(t.freq * x + t.phase);
        case Waveform::cos: return t.amp * std::cos(t.freq * x + t.phase);
        case Waveform::cos2: {
            const double c = std::cos(t.freq * x + t.phase);
            return t.amp * c * c;
        }
        case Waveform::linear: return t.amp * x;
    }
    return 0.0;
}

double term_derivative(const PotentialTerm& t, double x) {
    switch (t.waveform) {
        case Waveform::sin: return t.amp * t.freq * std::cos(t.freq * x + t.phase);
        case Waveform::cos: return -t.amp * t.freq * std::sin(t.freq * x + t.phase);
        case Waveform::cos2:
            // d/dx cos^2(wx+p) = -w sin(2(wx+p))
            return -t.amp * t.freq * std::sin(2.0 * (t.freq * x + t.phase));
        case Waveform::linear: return t.amp;
    }
    return 0.0;
}

double effective_freq(const PotentialTerm& t) {
    return t.waveform == Waveform::cos2 ? 2.0 * t.freq : t.freq;
}

}  // namespace

double PotentialSpec::eval(double x) const {
    double s = 0.0;
    for (const auto& t : terms) s += term_eval(t, x);
    return s;
}

double PotentialSpec::eval_derivative(double x) const {
    double s = 0.0;
    for (const auto& t : terms) s += term_derivative(t, x);
    return s;
}

RealField PotentialSpec::sample(const Grid& grid) const {
    return RealField::sample(grid, [this](double x) { return eval(x); });
}

double PotentialSpec::sup_bound() const {
    double s = 0.0;
    for (const auto& t : terms) {
        if (t.waveform == Waveform::linear) return std::numeric_limits<double>::infinity();
        s += std::abs(t.amp);
    }
    return s;
}

double PotentialSpec::derivative_sup_bound() const {
    double s = 0.0;
    for (const auto& t : terms) {
        if (t.waveform == Waveform::linear)
            s += std::abs(t.amp);
        else
            s += std::abs(t.amp) * std::abs(t.freq);
    }
    return s;
}

double PotentialSpec::c1_bound() const { return sup_bound() + derivative_sup_bound(); }

bool PotentialSpec::is_periodic(double half_length) const {
    for (const auto& t : terms) {
        if (t.waveform == Waveform::linear) {
            if (t.amp != 0.0) return false;
            continue;
        }
        const double ratio = effective_freq(t) * half_length / M_PI;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, std::abs(ratio)))
            return false;
    }
    return true;
}

PotentialSpec PotentialSpec::scaled_coordinates(double s) const {
    PotentialSpec out = *this;
    for (PotentialTerm& t : out.terms) {
        if (t.waveform == Waveform::linear)
            t.amp *= s;
        else
            t.freq *= s;
    }
    return out;
}

PotentialSpec PotentialSpec::zero() { return {}; }

PotentialSpec PotentialSpec::constant(double kappa) {
    return {{{kappa, Waveform::cos, 0.0, 0.0}}};
}

PotentialSpec PotentialSpec::linear_x(double slope) {
    return {{{slope, Waveform::linear, 0.0, 0.0}}};
}

PotentialSpec PotentialSpec::preset(std::string_view name) {
    if (name == "paper-v1")
        return {{{-10.0, Waveform::cos2, 6.0, 0.0}, {6.0, Waveform::sin, 10.0, 0.0}}};
    if (name == "paper-v2")
        return {{{8.0, Waveform::cos2, 4.0, 0.0}, {-4.0, Waveform::sin, 2.0, 0.0}}};
    if (name == "zero") return zero();
    throw std::invalid_argument("unknown potential preset: " + std::string(name));
}

bool PotentialSpec::is_preset(std::string_view name) {
    return name == "paper-v1" || name == "paper-v2" || name == "zero";
}

std::string waveform_name(Waveform w) {
    switch (w) {
        case Waveform::sin: return "sin";
        case Waveform::cos: return "cos";
        case Waveform::cos2: return "cos2";
        case Waveform::linear: return "linear";
    }
    return "?";
}

Waveform waveform_from_name(std::string_view name) {
    if (name == "sin") return Waveform::sin;
    if (name == "cos") return Waveform::cos;
    if (name == "cos2") return Waveform::cos2;
    if (name == "linear") return Waveform::linear;
    throw std::invalid_argument("unknown waveform: " + std::string(name));
}

}  // namespace mkdv
