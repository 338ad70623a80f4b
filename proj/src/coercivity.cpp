#include "mkdvlab/coercivity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mkdvlab/diagnostics.hpp"
#include "mkdvlab/errors.hpp"
#include "mkdvlab/fft.hpp"
#include "mkdvlab/spectral.hpp"

namespace mkdv {
namespace {

using Vec = std::vector<double>;

double edot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void eaxpy(double s, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

// Grid-bound appliers of L, B = 1 - d^2/dx^2, the constraint projector, and
// the spectral preconditioner (1 + k^2 + c^2)^{-1}.
struct Operators {
    Grid grid;
    Vec six_eta_sq;
    double c_sq;
    Vec q1, q2;  // Euclidean-orthonormal constraint directions

    Operators(SolitonParams p, const Grid& g) : grid(g), c_sq(p.c * p.c) {
        RealField e = eta(g, p);
        six_eta_sq.resize(e.v.size());
        for (std::size_t i = 0; i < e.v.size(); ++i)
            six_eta_sq[i] = 6.0 * e.v[i] * e.v[i];
        RealField m = displacement_field(g, p.a);
        q1 = e.v;
        q2.resize(e.v.size());
        for (std::size_t i = 0; i < e.v.size(); ++i) q2[i] = m.v[i] * e.v[i];
        // eta and (x-a) eta are L2-orthogonal (odd product); normalize and
        // clean residual coupling anyway
        const double n1 = std::sqrt(edot(q1, q1));
        for (double& v : q1) v /= n1;
        eaxpy(-edot(q2, q1), q1, q2);
        const double n2 = std::sqrt(edot(q2, q2));
        for (double& v : q2) v /= n2;
    }

    void project(Vec& w) const {
        eaxpy(-edot(w, q1), q1, w);
        eaxpy(-edot(w, q2), q2, w);
    }

    Vec apply_symbol(const Vec& w, auto&& symbol) const {
        const int n = grid.n;
        std::vector<cplx> buf(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) buf[i] = cplx(w[i], 0.0);
        std::vector<cplx> hat(w.size());
        fft_for(n).forward(buf, hat);
        for (int j = 0; j < n; ++j) {
            const double k = grid.k(j);
            hat[static_cast<std::size_t>(j)] *= symbol(k) / n;
        }
        fft_for(n).backward(hat, buf);
        Vec out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = buf[i].real();
        return out;
    }

    Vec apply_L(const Vec& w) const {
        Vec out = apply_symbol(w, [](double k) { return k * k; });  // -d^2/dx^2
        for (std::size_t i = 0; i < w.size(); ++i)
            out[i] += (c_sq - six_eta_sq[i]) * w[i];
        return out;
    }

    Vec apply_B(const Vec& w) const {
        return apply_symbol(w, [](double k) { return 1.0 + k * k; });
    }

    Vec apply_PLP(Vec w) const {
        project(w);
        Vec out = apply_L(w);
        project(out);
        return out;
    }

    Vec precondition(Vec r) const {
        project(r);
        Vec out = apply_symbol(r, [this](double k) { return 1.0 / (1.0 + k * k + c_sq); });
        project(out);
        return out;
    }
};

// Preconditioned CG for (P L P) z = b with b in the constraint subspace.
Vec cg_solve(const Operators& ops, const Vec& b, double tol, int max_iterations) {
    Vec x(b.size(), 0.0);
    Vec r = b;
    Vec z = ops.precondition(r);
    Vec d = z;
    double rz = edot(r, z);
    const double b_norm = std::sqrt(edot(b, b));
    if (b_norm == 0.0) return x;
    for (int it = 0; it < max_iterations; ++it) {
        Vec ad = ops.apply_PLP(d);
        const double dad = edot(d, ad);
        if (!(dad > 0.0))
            throw NoConvergenceError("coercivity: CG hit non-positive curvature");
        const double alpha = rz / dad;
        eaxpy(alpha, d, x);
        eaxpy(-alpha, ad, r);
        if (std::sqrt(edot(r, r)) <= tol * b_norm) return x;
        z = ops.precondition(r);
        const double rz_next = edot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = z[i] + beta * d[i];
    }
    throw NoConvergenceError("coercivity: CG failed to converge");
}

}  // namespace

double coercivity_estimate(SolitonParams p, const Grid& grid, const CoercivityOptions& opts) {
    Operators ops(p, grid);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec x(static_cast<std::size_t>(grid.n));
    for (double& v : x) v = gauss(rng);
    ops.project(x);

    double lambda_prev = 0.0;
    std::vector<double> history;
    for (int it = 0; it < opts.max_iterations; ++it) {
        Vec bx = ops.apply_B(x);
        ops.project(bx);
        Vec z = cg_solve(ops, bx, opts.cg_tol, opts.cg_max_iterations);
        ops.project(z);
        const double num = edot(z, ops.apply_L(z));
        const double den = edot(z, ops.apply_B(z));
        if (!(den > 0.0)) throw NoConvergenceError("coercivity: degenerate iterate", history);
        const double lambda = num / den;
        history.push_back(lambda);
        const double scale = 1.0 / std::sqrt(den);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] *= scale;
        x = std::move(z);
        if (it > 0 && std::abs(lambda - lambda_prev) <= opts.tol * std::max(1.0, std::abs(lambda)))
            return lambda;
        lambda_prev = lambda;
    }
    throw NoConvergenceError("coercivity: eigenvalue iteration failed to converge", history);
}

double coercivity_estimate_dense(SolitonParams p, const Grid& grid) {
    const int n = grid.n;
    if (n > 256)
        throw std::invalid_argument("coercivity_estimate_dense: cross-check path is n <= 256");
    Operators ops(p, grid);

    Eigen::MatrixXd L(n, n), B(n, n);
    Vec unit(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        unit[static_cast<std::size_t>(j)] = 1.0;
        Vec lcol = ops.apply_L(unit);
        Vec bcol = ops.apply_B(unit);
        for (int i = 0; i < n; ++i) {
            L(i, j) = lcol[static_cast<std::size_t>(i)];
            B(i, j) = bcol[static_cast<std::size_t>(i)];
        }
        unit[static_cast<std::size_t>(j)] = 0.0;
    }
    L = 0.5 * (L + L.transpose()).eval();
    B = 0.5 * (B + B.transpose()).eval();

    Eigen::Map<const Eigen::VectorXd> q1(ops.q1.data(), n), q2(ops.q2.data(), n);
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - q1 * q1.transpose() -
                        q2 * q2.transpose();
    // penalize the constraint span so its (meaningless) pencil eigenvalues
    // move far above the constrained minimum
    const double mu = 1e8;
    Eigen::MatrixXd A = P * L * P + mu * (Eigen::MatrixXd::Identity(n, n) - P);
    A = 0.5 * (A + A.transpose()).eval();

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B);
    if (solver.info() != Eigen::Success)
        throw NoConvergenceError("coercivity_estimate_dense: eigensolver failed");
    return solver.eigenvalues()(0);
}

}  // namespace mkdv
