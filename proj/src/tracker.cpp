#include "mkdvlab/tracker.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mkdvlab/effective.hpp"
#include "mkdvlab/errors.hpp"
#include "mkdvlab/kernels.hpp"
#include "mkdvlab/spectral.hpp"

namespace mkdv {
namespace {

struct Residuals {
    double r1;
    double r2;
};

Residuals residuals_at(const RealField& u, SolitonParams p) {
    const Grid& g = u.grid;
    RealField e = eta(g, p);
    RealField m = displacement_field(g, p.a);
    double r1 = 0.0, r2 = 0.0;
    // single fused pass: w = u - eta against eta and (x-a) eta
    for (int j = 0; j < g.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        const double w = u.v[i] - e.v[i];
        r1 += w * e.v[i];
        r2 += w * m.v[i] * e.v[i];
    }
    return {r1 * g.dx, r2 * g.dx};
}

}  // namespace

SolitonParams moment_estimate(const RealField& u) {
    const Grid& g = u.grid;
    const double p2 = kernels::dot(u.v, u.v) * g.dx;
    if (p2 <= 0.0) throw ZeroFieldError("moment_estimate: zero field");
    const double c = 0.5 * p2;
    // circular centroid of u^2: a = (l/pi) arg sum exp(i pi x / l) u^2
    std::complex<double> z(0.0, 0.0);
    const double k1 = M_PI / g.half_length;
    for (int j = 0; j < g.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        z += u.v[i] * u.v[i] * std::polar(1.0, k1 * g.x(j));
    }
    const double a = std::arg(z) / k1;
    return {a, c};
}

std::array<double, 4> fit_jacobian(const RealField& u, SolitonParams p) {
    const Grid& g = u.grid;
    RealField e = eta(g, p);
    RealField da = d_a_eta(g, p);
    RealField dc = d_c_eta(g, p);
    RealField m = displacement_field(g, p.a);
    RealField w = add_scaled(u, -1.0, e);
    RealField me = multiply(m, e);
    // r1 = <u - eta, eta>, r2 = <u - eta, (x-a) eta>; differentiate eta and
    // the displacement under the integrals
    const double j11 = inner(w, da) - inner(da, e);
    const double j12 = inner(w, dc) - inner(dc, e);
    const double j21 = inner(w, multiply(m, da)) - inner(w, e) - inner(da, me);
    const double j22 = inner(w, multiply(m, dc)) - inner(dc, me);
    return {j11, j12, j21, j22};
}

std::array<double, 4> normalized_fit_jacobian(const RealField& u, SolitonParams p) {
    std::array<double, 4> j = fit_jacobian(u, p);
    // da^dc normalization: at w = 0 the raw Jacobian is [[0,-1],[-c,0]]
    return {-j[0], -j[1], -j[2] / p.c, -j[3] / p.c};
}

FitResult symplectic_fit(const RealField& u, SolitonParams init, const FitOptions& opts) {
    const double unorm = l2_norm(u);
    if (unorm <= 0.0) throw ZeroFieldError("symplectic_fit: zero field");
    const double tol = opts.tol_factor * unorm;

    SolitonParams p = init;
    if (!(p.c > 0.0)) throw std::invalid_argument("symplectic_fit: init.c must be positive");
    const double c_max = opts.c_dx_max / u.grid.dx;
    if (p.c > c_max)
        throw std::invalid_argument("symplectic_fit: init.c exceeds the grid resolvability");

    std::vector<double> history;
    Residuals r = residuals_at(u, p);
    double score = std::max(std::abs(r.r1), std::abs(r.r2));
    history.push_back(score);

    int iter = 0;
    for (; iter < opts.max_iterations && score > tol; ++iter) {
        const std::array<double, 4> j = fit_jacobian(u, p);
        const double det = j[0] * j[3] - j[1] * j[2];
        if (!(std::abs(det) > 1e-300))
            throw NoConvergenceError("symplectic_fit: singular Jacobian", history);
        const double step_a = (-r.r1 * j[3] + r.r2 * j[1]) / det;
        const double step_c = (-r.r2 * j[0] + r.r1 * j[2]) / det;

        // damped Newton: halve on residual increase, invalid or unresolvable scale
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < opts.max_halvings; ++h, lambda *= 0.5) {
            SolitonParams trial{p.a + lambda * step_a, p.c + lambda * step_c};
            if (!(trial.c > 0.0) || trial.c > c_max) continue;
            const Residuals rt = residuals_at(u, trial);
            const double st = std::max(std::abs(rt.r1), std::abs(rt.r2));
            if (st < score) {
                p = trial;
                r = rt;
                score = st;
                accepted = true;
                break;
            }
        }
        history.push_back(score);
        if (!accepted)
            throw NoConvergenceError("symplectic_fit: damping failed to reduce residuals",
                                     history);
    }
    if (score > tol)
        throw NoConvergenceError("symplectic_fit: no convergence in " +
                                     std::to_string(opts.max_iterations) + " iterations",
                                 history);

    FitResult out;
    out.params = p;
    out.r1 = r.r1;
    out.r2 = r.r2;
    out.iterations = iter;
    out.deviation_h1 = h1_norm(add_scaled(u, -1.0, eta(u.grid, p)));
    return out;
}

TrackResult track(const std::vector<Snapshot>& snapshots, std::optional<SolitonParams> init,
                  const FitOptions& opts) {
    TrackResult out;
    if (snapshots.empty()) return out;
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        if (!(snapshots[i].t > snapshots[i - 1].t))
            throw std::invalid_argument("track: snapshots must be time-ordered");

    SolitonParams warm = init ? *init : moment_estimate(snapshots.front().u);
    double prev_a = warm.a;
    const double period = snapshots.front().u.grid.length();
    for (const Snapshot& snap : snapshots) {
        FitResult fit;
        try {
            fit = symplectic_fit(snap.u, warm, opts);
        } catch (const ZeroFieldError& e) {
            out.failed_at = snap.t;
            out.failure = e.what();
            return out;
        } catch (const NoConvergenceError& e) {
            // stale warm start: retry once from the moment initializer
            try {
                fit = symplectic_fit(snap.u, moment_estimate(snap.u), opts);
            } catch (const std::exception&) {
                out.failed_at = snap.t;
                out.failure = e.what();
                return out;
            }
        }
        // nearest-period continuation of the position
        double a = fit.params.a;
        if (!out.samples.empty()) a -= period * std::round((a - prev_a) / period);
        prev_a = a;
        warm = fit.params;
        out.samples.push_back(
            {snap.t, a, fit.params.c, fit.r1, fit.r2, fit.deviation_h1, fit.iterations});
    }
    return out;
}

ModulationResiduals modulation_residuals(const std::vector<TrackSample>& samples,
                                         const PotentialSpec& potential, double epsilon) {
    if (samples.size() < 3)
        throw std::invalid_argument("modulation_residuals: need at least 3 samples");
    const double h = samples[1].t - samples[0].t;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double hi = samples[i].t - samples[i - 1].t;
        if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("modulation_residuals: timestamps must be uniform");
    }

    ModulationResiduals out;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double a_dot = (samples[i + 1].a - samples[i - 1].a) / (2.0 * h);
        const double c_dot = (samples[i + 1].c - samples[i - 1].c) / (2.0 * h);
        const SolitonParams p{samples[i].a, samples[i].c};
        const double vee = bracket_vee(potential, p);
        const double vxe = bracket_vxe(potential, p);
        out.t.push_back(samples[i].t);
        out.rho_a.push_back(a_dot - p.c * p.c - epsilon / p.c * vxe);
        out.rho_c.push_back(c_dot - epsilon * vee);
    }
    return out;
}

}  // namespace mkdv
