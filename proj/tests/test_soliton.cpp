#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "mkdvlab/soliton.hpp"
#include "mkdvlab/spectral.hpp"
#include "mkdvlab/warnings.hpp"
#include "oracles.hpp"

using namespace mkdv;

namespace {

double max_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (int j = 0; j < a.n(); ++j)
        m = std::max(m, std::abs(a.v[static_cast<std::size_t>(j)] -
                                 b.v[static_cast<std::size_t>(j)]));
    return m;
}

struct WarningCapture {
    std::vector<std::string> messages;
    WarningCapture() {
        set_warning_handler([this](const std::string& m) { messages.push_back(m); });
    }
    ~WarningCapture() {
        set_warning_handler([](const std::string&) {});
    }
};

}  // namespace

TEST_CASE("eta values and scaling covariance") {
    Grid g(1024, 20.0);
    SolitonParams p{0.0, 1.0};
    RealField e = eta(g, p);
    CHECK(e.v[static_cast<std::size_t>(g.n / 2)] == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 0; j < g.n; j += 97) {
        const double d = g.wrap(g.x(j) - p.a);
        // exact against the periodized formula; within 1e-8 of the bare
        // profile (image tails are below 2 exp(-c l) = 8.3e-9 at c l = 20)
        double sum = 0.0;
        for (int m = -1; m <= 1; ++m) sum += p.c / std::cosh(p.c * (d + m * g.length()));
        CHECK(e.v[static_cast<std::size_t>(j)] == sum);
        CHECK(std::abs(e.v[static_cast<std::size_t>(j)] - p.c / std::cosh(p.c * d)) < 1e-8);
    }
    // c negative rejected
    CHECK_THROWS_AS(eta(g, {0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("profile equation residual: -eta + eta_xx + 2 eta^3 = 0") {
    Grid g(1024, 20.0);
    RealField e = eta(g, {0.0, 1.0});
    RealField exx = spectral_derivative(e, 2);
    double resid = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        resid = std::max(resid,
                         std::abs(-e.v[i] + exx.v[i] + 2.0 * std::pow(e.v[i], 3)));
    }
    CHECK(resid < 1e-8);
}

TEST_CASE("d_c_eta matches a centered finite difference") {
    Grid g(1024, 24.0);
    SolitonParams p{0.7, 1.1};
    const double h = 1e-5;
    RealField up = eta(g, {p.a, p.c + h});
    RealField dn = eta(g, {p.a, p.c - h});
    RealField fd(g);
    for (int j = 0; j < g.n; ++j)
        fd.v[static_cast<std::size_t>(j)] =
            (up.v[static_cast<std::size_t>(j)] - dn.v[static_cast<std::size_t>(j)]) / (2.0 * h);
    CHECK(max_diff(d_c_eta(g, p), fd) < 1e-8);
}

TEST_CASE("d_a_eta equals minus the spectral derivative of eta") {
    Grid g(1024, 24.0);
    SolitonParams p{-3.0, 1.0};
    RealField da = d_a_eta(g, p);
    RealField minus_dx = spectral_derivative(eta(g, p), 1);
    for (double& v : minus_dx.v) v = -v;
    CHECK(max_diff(da, minus_dx) < 1e-9);
}

TEST_CASE("closed-form invariants and the grid cross-check") {
    const SolitonInvariants i1 = invariants_on_soliton({0.0, 1.0});
    CHECK(i1.mass == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(i1.momentum == 1.0);
    CHECK(i1.h0 == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

    const SolitonInvariants i2 = invariants_on_soliton({5.0, 2.0});
    CHECK(i2.momentum == 2.0);
    CHECK(i2.h0 == doctest::Approx(-8.0 / 3.0).epsilon(1e-15));

    Grid g(1024, 20.0);
    for (double c : {1.0, 2.0}) {
        CAPTURE(c);
        SolitonParams p{0.4, c};
        RealField e = eta(g, p);
        const SolitonInvariants inv = invariants_on_soliton(p);
        CHECK(std::abs(quadrature(e) - inv.mass) < 1e-8);
        CHECK(std::abs(0.5 * inner(e, e) - inv.momentum) < 1e-8);
        RealField ex = spectral_derivative(e, 1);
        double quartic = 0.0;
        for (double v : e.v) quartic += v * v * v * v;
        const double h0 = 0.5 * (inner(ex, ex) - g.dx * quartic);
        CHECK(std::abs(h0 - inv.h0) < 1e-8);
    }
}

TEST_CASE("symplectic pairings against quadrature oracles") {
    Grid g(1024, 24.0);
    SolitonParams p{1.5, 1.2};
    const SymplecticPairings pair = symplectic_pairings(g, p);

    // <d_a eta, J^{-1} d_c eta> = 1 (omega|_M = da ^ dc)
    CHECK(std::abs(inner(d_a_eta(g, p), pair.j_inv_d_c) - 1.0) < 1e-8);
    // <J^{-1} d_a eta, (x-a) eta> = 0 by oddness
    CHECK(std::abs(inner(pair.j_inv_d_a, multiply(displacement_field(g, p.a), eta(g, p)))) <
          1e-10);
    // <d_c eta, J^{-1} d_a eta> = -1 (antisymmetry partner, = -d_c P(eta))
    CHECK(std::abs(inner(d_c_eta(g, p), pair.j_inv_d_a) + 1.0) < 1e-8);
}

TEST_CASE("translation equivariance by whole grid cells") {
    Grid g(256, 12.0);
    SolitonParams p{0.5, 1.3};
    const int shift = 37;
    RealField base = eta(g, p);
    RealField moved = eta(g, {p.a + shift * g.dx, p.c});
    double err = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const int src = ((j - shift) % g.n + g.n) % g.n;
        err = std::max(err, std::abs(moved.v[static_cast<std::size_t>(j)] -
                                     base.v[static_cast<std::size_t>(src)]));
    }
    CHECK(err < 1e-13);
}

TEST_CASE("free mKdV right side on the soliton: JH0'(eta) = c^2 d_a eta") {
    Grid g(1024, 24.0);
    SolitonParams p{0.0, 1.0};
    RealField e = eta(g, p);
    RealField exxx = spectral_derivative(e, 3);
    RealField cube(g);
    for (int j = 0; j < g.n; ++j)
        cube.v[static_cast<std::size_t>(j)] = std::pow(e.v[static_cast<std::size_t>(j)], 3);
    RealField cube_x = spectral_derivative(cube, 1);
    RealField da = d_a_eta(g, p);
    double err = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        err = std::max(err, std::abs(-exxx.v[i] - 2.0 * cube_x.v[i] -
                                     p.c * p.c * da.v[i]));
    }
    CHECK(err < 1e-7);
}

TEST_CASE("tail-truncation warning fires below c*l = 20, deduplicated") {
    WarningCapture capture;
    reset_warn_once();
    Grid small(64, 10.0);
    eta(small, {0.0, 1.0});  // c*l = 10
    CHECK(capture.messages.size() == 1);
    eta(small, {0.0, 1.5});
    CHECK(capture.messages.size() == 1);  // suppressed repeat
    Grid ok(64, 25.0);
    eta(ok, {0.0, 1.0});
    CHECK(capture.messages.size() == 1);
    reset_warn_once();
}
