#include <cmath>

#include "doctest.h"
#include "mkdvlab/effective.hpp"
#include "mkdvlab/errors.hpp"
#include "oracles.hpp"

using namespace mkdv;

TEST_CASE("brackets for a constant potential") {
    const PotentialSpec v = PotentialSpec::constant(0.8);
    for (double c : {0.5, 1.0, 2.3}) {
        CAPTURE(c);
        SolitonParams p{0.3, c};
        CHECK(bracket_vee(v, p) == doctest::Approx(2.0 * 0.8 * c).epsilon(1e-12));
        CHECK(std::abs(bracket_vxe(v, p)) < 1e-12);
    }
}

TEST_CASE("brackets for V(x) = x against the moment oracle") {
    const PotentialSpec v = PotentialSpec::linear_x();
    // integral y^2 sech^2(y) dy = pi^2/6, via the adaptive oracle
    const double moment = oracle::integrate(
        [](double y) {
            const double s = 1.0 / std::cosh(y);
            return y * y * s * s;
        },
        -40.0, 40.0);
    CHECK(moment == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
    for (double c : {0.8, 1.0, 1.7}) {
        for (double a : {-1.2, 0.0, 2.5}) {
            CAPTURE(c);
            CAPTURE(a);
            CHECK(bracket_vee(v, {a, c}) == doctest::Approx(2.0 * a * c).epsilon(1e-10));
            CHECK(bracket_vxe(v, {a, c}) == doctest::Approx(moment / c).epsilon(1e-10));
        }
    }
}

TEST_CASE("bracket of a potential odd about the soliton position vanishes") {
    const double a = 0.3;
    PotentialSpec odd{{{1.0, Waveform::sin, 2.0, -2.0 * a}}};  // sin(2(x - a))
    CHECK(std::abs(bracket_vee(odd, {a, 1.0})) < 1e-12);
}

TEST_CASE("bracket window independence") {
    const PotentialSpec v = PotentialSpec::preset("paper-v1");
    SolitonParams p{0.4, 1.1};
    const double narrow_vee = bracket_vee(v, p, 40.0, 2048);
    const double wide_vee = bracket_vee(v, p, 80.0, 4096);
    CHECK(std::abs(narrow_vee - wide_vee) < 1e-9 * std::max(1.0, std::abs(wide_vee)));
    const double narrow_vxe = bracket_vxe(v, p, 40.0, 2048);
    const double wide_vxe = bracket_vxe(v, p, 80.0, 4096);
    CHECK(std::abs(narrow_vxe - wide_vxe) < 1e-9 * std::max(1.0, std::abs(wide_vxe)));
}

TEST_CASE("right side limits") {
    EffectiveConfig free_cfg;
    free_cfg.epsilon = 0.0;
    const OdeRhs free_rhs = effective_rhs(free_cfg, {0.0, 1.3});
    CHECK(free_rhs.da_dt == doctest::Approx(1.69));
    CHECK(free_rhs.dc_dt == 0.0);

    EffectiveConfig const_cfg;
    const_cfg.epsilon = 0.05;
    const_cfg.potential = PotentialSpec::constant(0.8);
    const OdeRhs r = effective_rhs(const_cfg, {0.0, 1.0});
    CHECK(r.da_dt == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.dc_dt == doctest::Approx(2.0 * 0.05 * 0.8).epsilon(1e-10));

    // V even about a: da/dt = c^2 exactly
    EffectiveConfig even_cfg;
    even_cfg.epsilon = 0.1;
    even_cfg.potential = PotentialSpec{{{2.0, Waveform::cos, 3.0, -3.0 * 0.7}}};  // cos(3(x-a))
    const OdeRhs re = effective_rhs(even_cfg, {0.7, 1.0});
    CHECK(re.da_dt == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scale collapse guard") {
    EffectiveConfig cfg;
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(effective_rhs(cfg, {0.0, 1e-4}), ScaleCollapseError);

    // strong negative constant potential drives c to the floor
    cfg.epsilon = 0.5;
    cfg.potential = PotentialSpec::constant(-5.0);
    cfg.dt = 0.01;
    cfg.t_final = 10.0;
    CHECK_THROWS_AS(integrate_effective(cfg, {0.0, 0.5}), ScaleCollapseError);
}

TEST_CASE("free flow is exact") {
    EffectiveConfig cfg;
    cfg.epsilon = 0.0;
    cfg.dt = 1e-2;
    cfg.t_final = 3.0;
    const auto samples = integrate_effective(cfg, {0.5, 1.0});
    const OdeSample& last = samples.back();
    CHECK(last.t == doctest::Approx(3.0));
    CHECK(std::abs(last.a - 3.5) < 1e-12);
    CHECK(std::abs(last.c - 1.0) < 1e-14);
}

TEST_CASE("constant potential has the closed-form scale growth") {
    const double kappa = 0.6, eps = 0.04, c0 = 1.1, tf = 2.0;
    EffectiveConfig cfg;
    cfg.epsilon = eps;
    cfg.potential = PotentialSpec::constant(kappa);
    cfg.t_final = tf;
    const double exact = c0 * std::exp(2.0 * eps * kappa * tf);

    cfg.dt = 0.05;
    const double coarse = integrate_effective(cfg, {0.0, c0}).back().c;
    cfg.dt = 0.025;
    const double fine = integrate_effective(cfg, {0.0, c0}).back().c;
    const double ratio = std::abs(coarse - exact) / std::abs(fine - exact);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
    CHECK(std::abs(fine - exact) < 1e-9);
}

TEST_CASE("reversibility of the parameter ODEs") {
    EffectiveConfig cfg;
    cfg.epsilon = 0.05;
    cfg.potential = PotentialSpec::preset("paper-v1");
    cfg.dt = 1e-3;
    cfg.t_final = 0.5;
    const auto fw = integrate_effective(cfg, {0.2, 1.0});
    EffectiveConfig back = cfg;
    back.dt = -cfg.dt;
    back.t_final = -cfg.t_final;
    const auto bw = integrate_effective(back, {fw.back().a, fw.back().c});
    CHECK(std::abs(bw.back().a - 0.2) < 1e-10);
    CHECK(std::abs(bw.back().c - 1.0) < 1e-10);
}

TEST_CASE("self-convergence order on the paper-v1 preset") {
    EffectiveConfig cfg;
    cfg.epsilon = 1.0;  // rescaled-frame coupling: the stiffest sensible case
    cfg.potential = PotentialSpec::preset("paper-v1");
    cfg.t_final = 0.1;
    auto end_at = [&](double dt) {
        EffectiveConfig c = cfg;
        c.dt = dt;
        const OdeSample last = integrate_effective(c, {0.0, 1.0}).back();
        return std::pair{last.a, last.c};
    };
    const auto [a1, c1] = end_at(2e-3);
    const auto [a2, c2] = end_at(1e-3);
    const auto [a3, c3] = end_at(5e-4);
    const double e1 = std::hypot(a1 - a2, c1 - c2);
    const double e2 = std::hypot(a2 - a3, c2 - c3);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("scale stays within the a-priori drift bound") {
    EffectiveConfig cfg;
    cfg.epsilon = 0.1;
    cfg.potential = PotentialSpec::preset("paper-v1");
    cfg.dt = 1e-3;
    cfg.t_final = 0.5;
    const auto samples = integrate_effective(cfg, {0.0, 1.0});
    double sup_c = 0.0;
    for (const OdeSample& s : samples) sup_c = std::max(sup_c, s.c);
    const double K = 2.0 * cfg.potential.sup_bound() * sup_c;
    for (const OdeSample& s : samples) {
        CHECK(s.c <= 1.0 + K * cfg.epsilon * s.t + 1e-12);
        CHECK(s.c >= 1.0 - K * cfg.epsilon * s.t - 1e-12);
    }
}

TEST_CASE("stride controls emission") {
    EffectiveConfig cfg;
    cfg.epsilon = 0.0;
    cfg.dt = 0.1;
    cfg.t_final = 1.0;
    cfg.stride = 5;
    const auto samples = integrate_effective(cfg, {0.0, 1.0});
    REQUIRE(samples.size() == 3);
    CHECK(samples[0].t == 0.0);
    CHECK(samples[1].t == doctest::Approx(0.5));
    CHECK(samples[2].t == doctest::Approx(1.0));
}

TEST_CASE("negative epsilon is rejected") {
    EffectiveConfig cfg;
    cfg.epsilon = -0.1;
    cfg.t_final = 1.0;
    CHECK_THROWS_AS(integrate_effective(cfg, {0.0, 1.0}), std::invalid_argument);
}
