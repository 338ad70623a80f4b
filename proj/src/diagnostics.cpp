#include "mkdvlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mkdvlab/kernels.hpp"
#include "mkdvlab/spectral.hpp"

namespace mkdv {
namespace {

// Composite Simpson on a uniform mesh; odd interval counts get a 3/8 tail.
double simpson_uniform(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("simpson_uniform: need at least 3 samples");
    std::size_t m = n - 1;  // interval count
    double s = 0.0;
    std::size_t upto = m;
    if (m % 2 != 0) {
        if (m < 3) throw std::invalid_argument("simpson_uniform: cannot place 3/8 tail");
        upto = m - 3;
        s += 3.0 * h / 8.0 *
             (f[upto] + 3.0 * f[upto + 1] + 3.0 * f[upto + 2] + f[upto + 3]);
    }
    for (std::size_t i = 0; i + 2 <= upto; i += 2)
        s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    return s;
}

}  // namespace

ConservedTriple conserved(const RealField& u) {
    const RealField ux = spectral_derivative(u, 1);
    const double mass = quadrature(u);
    const double momentum = 0.5 * u.grid.dx * kernels::dot(u.v, u.v);
    double quartic = 0.0;
    for (double v : u.v) quartic += v * v * v * v;
    const double hamiltonian =
        0.5 * (u.grid.dx * kernels::dot(ux.v, ux.v) - u.grid.dx * quartic);
    return {mass, momentum, hamiltonian};
}

BalanceResiduals balance_residuals(const std::vector<Snapshot>& snapshots,
                                   const PotentialSpec& potential, double gamma) {
    if (snapshots.size() < 3)
        throw std::invalid_argument("balance_residuals: need at least 3 snapshots");
    const double h = snapshots[1].t - snapshots[0].t;
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        if (std::abs(snapshots[i].t - snapshots[i - 1].t - h) >
            1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("balance_residuals: snapshots must be uniform");

    const RealField vs = potential.sample(snapshots.front().u.grid);
    std::vector<double> s1, s2;
    s1.reserve(snapshots.size());
    s2.reserve(snapshots.size());
    for (const Snapshot& snap : snapshots) {
        s1.push_back(inner(vs, snap.u));
        s2.push_back(snap.u.grid.dx * kernels::dot3(vs.v, snap.u.v, snap.u.v));
    }
    const ConservedTriple first = conserved(snapshots.front().u);
    const ConservedTriple last = conserved(snapshots.back().u);
    const double mass_res = std::abs(last.mass - first.mass - gamma * simpson_uniform(s1, h));
    const double mom_res =
        std::abs(last.momentum - first.momentum - gamma * simpson_uniform(s2, h));
    return {mass_res, mom_res};
}

RealField deviation(const RealField& u, SolitonParams p) {
    return add_scaled(u, -1.0, eta(u.grid, p));
}

F0Projections f0_projections(const Grid& grid, SolitonParams p, double a_dot, double c_dot,
                             const PotentialSpec& potential, double epsilon) {
    const RealField e = eta(grid, p);
    const RealField v = potential.sample(grid);
    const RealField veta = multiply(v, e);
    const SymplecticPairings pair = symplectic_pairings(grid, p);
    const double bracket_dc = inner(veta, pair.j_inv_d_c);  // <V eta, J^{-1} d_c eta>
    const double bracket_da = inner(veta, pair.j_inv_d_a);  // <V eta, J^{-1} d_a eta>

    F0Projections out;
    out.alpha_a = a_dot - p.c * p.c - epsilon * bracket_dc;
    out.alpha_c = c_dot + epsilon * bracket_da;
    RealField orth = add_scaled(RealField(grid), -epsilon, veta);
    orth = add_scaled(orth, epsilon * bracket_dc, d_a_eta(grid, p));
    orth = add_scaled(orth, -epsilon * bracket_da, d_c_eta(grid, p));
    out.orthogonal = std::move(orth);
    return out;
}

RealField apply_L(const RealField& w, SolitonParams p) {
    const RealField e = eta(w.grid, p);
    const RealField wxx = spectral_derivative(w, 2);
    RealField out(w.grid);
    const double c2 = p.c * p.c;
    for (int j = 0; j < w.grid.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        out.v[i] = -wxx.v[i] - 6.0 * e.v[i] * e.v[i] * w.v[i] + c2 * w.v[i];
    }
    return out;
}

double energy_functional(const RealField& w, SolitonParams p) {
    const RealField lw = apply_L(w, p);
    const RealField e = eta(w.grid, p);
    double cubic = 0.0, quartic = 0.0;
    for (int j = 0; j < w.grid.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        const double wi = w.v[i];
        cubic += e.v[i] * wi * wi * wi;
        quartic += wi * wi * wi * wi;
    }
    const double dx = w.grid.dx;
    return 0.5 * inner(lw, w) - 2.0 * dx * cubic - 0.5 * dx * quartic;
}

VirialWeight::VirialWeight(double A) : A_(A) {
    if (!(A > 0.0)) throw std::invalid_argument("VirialWeight: A must be positive");
    // cumulative integral of phi over [1,2]: fixed panels, 8-point
    // Gauss-Legendre each (machine accurate for this analytic bridge)
    constexpr int kPanels = 64;
    static const double gl_x[4] = {0.1834346424956498, 0.5255324099163290,
                                   0.7966664774136267, 0.9602898564975363};
    static const double gl_w[4] = {0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};
    cum_.assign(kPanels + 1, 0.0);
    const double hp = 1.0 / kPanels;
    for (int p = 0; p < kPanels; ++p) {
        const double lo = 1.0 + p * hp;
        const double mid = lo + 0.5 * hp;
        double s = 0.0;
        for (int q = 0; q < 4; ++q) {
            s += gl_w[q] * (phi(mid + 0.5 * hp * gl_x[q]) + phi(mid - 0.5 * hp * gl_x[q]));
        }
        cum_[static_cast<std::size_t>(p + 1)] =
            cum_[static_cast<std::size_t>(p)] + 0.5 * hp * s;
    }
    psi_two_ = 1.0 + cum_.back();
}

double VirialWeight::phi(double x) const {
    const double t = std::abs(x);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return std::exp(-t);
    const double s = t - 1.0;
    return std::exp(-(5.0 * s * s - 3.0 * s * s * s));
}

double VirialWeight::psi(double x) const {
    const double t = std::abs(x);
    double value;
    if (t <= 1.0) {
        value = t;
    } else if (t >= 2.0) {
        value = psi_two_ + std::exp(-2.0) - std::exp(-t);
    } else {
        // cumulative table at the panel edge below t, then a short
        // Gauss-Legendre stretch for the remainder
        const int panels = static_cast<int>(cum_.size()) - 1;
        const double hp = 1.0 / panels;
        int p = static_cast<int>((t - 1.0) / hp);
        p = std::clamp(p, 0, panels - 1);
        const double lo = 1.0 + p * hp;
        static const double gl_x[4] = {0.1834346424956498, 0.5255324099163290,
                                       0.7966664774136267, 0.9602898564975363};
        static const double gl_w[4] = {0.3626837833783620, 0.3137066458778873,
                                       0.2223810344533745, 0.1012285362903763};
        const double half = 0.5 * (t - lo);
        const double mid = lo + half;
        double s = 0.0;
        for (int q = 0; q < 4; ++q)
            s += gl_w[q] * (phi(mid + half * gl_x[q]) + phi(mid - half * gl_x[q]));
        value = 1.0 + cum_[static_cast<std::size_t>(p)] + half * s;
    }
    return x >= 0.0 ? value : -value;
}

double VirialWeight::psi_scaled(double x) const { return A_ * psi(x / A_); }

double VirialWeight::psi_limit() const { return psi_two_ + std::exp(-2.0); }

double virial_functional(const RealField& w, SolitonParams p, const VirialWeight& weight) {
    double s = 0.0;
    for (int j = 0; j < w.grid.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        const double d = w.grid.wrap(w.grid.x(j) - p.a);
        s += weight.psi_scaled(d) * w.v[i] * w.v[i];
    }
    return s * w.grid.dx;
}

WeightCheckReport weight_checks(const VirialWeight& weight, int samples, double x_max) {
    WeightCheckReport rep{true, true, true, true, true, true, 0.0};
    auto violate = [&rep](bool& flag, double amount) {
        if (amount > 0.0) {
            rep.max_violation = std::max(rep.max_violation, amount);
            flag = false;
        }
    };
    double prev = weight.phi(0.0);
    for (int i = 0; i <= samples; ++i) {
        const double x = x_max * i / samples;
        const double f = weight.phi(x);
        violate(rep.even_ok, std::abs(f - weight.phi(-x)));
        if (x <= 1.0) violate(rep.plateau_ok, std::abs(f - 1.0));
        if (x >= 2.0) violate(rep.tail_ok, std::abs(f - std::exp(-x)));
        violate(rep.monotone_ok, f - prev - 1e-15);
        violate(rep.sandwich_ok, std::exp(-x) - f);
        violate(rep.sandwich_ok, f - 3.0 * std::exp(-x));
        violate(rep.psi_odd_ok, std::abs(weight.psi(x) + weight.psi(-x)));
        prev = f;
    }
    return rep;
}

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> w, double epsilon,
                         double omega0, EnvelopeKind kind) {
    if (t.size() != w.size() || t.empty())
        throw std::invalid_argument("fit_envelope: mismatched or empty series");
    const double rate = kind == EnvelopeKind::orbital ? epsilon : std::sqrt(epsilon);
    auto envelope = [&](double C, double tk) {
        return C * (omega0 + epsilon * std::sqrt(std::max(tk, 0.0))) * std::exp(C * rate * tk);
    };
    auto holds = [&](double C) {
        for (std::size_t k = 0; k < t.size(); ++k)
            if (w[k] > envelope(C, t[k])) return false;
        return true;
    };

    EnvelopeFit out;
    if (holds(0.0)) {
        out.C = 0.0;
    } else {
        double hi = 1.0;
        while (!holds(hi) && hi < 1e9) hi *= 2.0;
        double lo = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double midpoint = 0.5 * (lo + hi);
            (holds(midpoint) ? hi : lo) = midpoint;
        }
        out.C = hi;
    }
    out.margin.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) out.margin[k] = envelope(out.C, t[k]) - w[k];
    return out;
}

}  // namespace mkdv
