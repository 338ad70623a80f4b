#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mkdvlab/experiments.hpp"
#include "mkdvlab/spectral.hpp"

using namespace mkdv;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("frame resolution and presets") {
    RunConfig fig = preset_fig(1);
    CHECK(fig.frame == Frame::rescaled);
    CHECK(fig.resolved_half_length() == doctest::Approx(M_PI));
    CHECK(fig.gamma() == 1.0);
    // physical (a0, c0) -> rescaled initial scale c0 * eps^{-1/3}
    const SolitonParams init = fig.frame_initial();
    CHECK(init.a == 0.0);
    CHECK(init.c == doctest::Approx(fig.c0 / std::cbrt(0.01)).epsilon(1e-12));
    CHECK(fig.t_final == doctest::Approx(0.1));

    RunConfig phys;
    phys.frame = Frame::physical;
    phys.epsilon = 0.008;
    CHECK(phys.resolved_half_length() == doctest::Approx(M_PI / std::cbrt(0.008)));
    CHECK(phys.gamma() == doctest::Approx(0.008));
    CHECK(phys.frame_initial().c == 1.0);

    CHECK_THROWS_AS(run_preset("fig3"), std::invalid_argument);
    RunConfig bad = fig;
    bad.half_length = 2.0;
    CHECK_THROWS_AS(bad.resolved_half_length(), std::invalid_argument);
}

TEST_CASE("run config round-trips through the config format") {
    RunConfig cfg = preset_fig(2);
    cfg.perturbation.kind = PerturbationSpec::Kind::random_smooth;
    cfg.perturbation.omega0 = 0.01;
    cfg.perturbation.seed = 42;
    const RunConfig back = run_config_from(to_config(cfg));
    CHECK(back.frame == cfg.frame);
    CHECK(back.epsilon == cfg.epsilon);
    CHECK(back.n == cfg.n);
    CHECK(back.potential_preset == cfg.potential_preset);
    CHECK(back.a0 == cfg.a0);
    CHECK(back.c0 == cfg.c0);
    CHECK(back.dt == cfg.dt);
    CHECK(back.t_final == cfg.t_final);
    CHECK(back.snapshot_every == cfg.snapshot_every);
    CHECK(back.perturbation.kind == cfg.perturbation.kind);
    CHECK(back.perturbation.omega0 == cfg.perturbation.omega0);
    CHECK(back.perturbation.seed == cfg.perturbation.seed);

    RunConfig custom;
    custom.potential_preset.clear();
    custom.potential = PotentialSpec{{{1.5, Waveform::cos2, 2.0, 0.25}}};
    const RunConfig back2 = run_config_from(to_config(custom));
    REQUIRE(back2.potential.terms.size() == 1);
    CHECK(back2.potential.terms[0].amp == 1.5);
    CHECK(back2.potential.terms[0].waveform == Waveform::cos2);
    CHECK(back2.potential.terms[0].freq == 2.0);
    CHECK(back2.potential.terms[0].phase == 0.25);
}

TEST_CASE("perturbation builder: size and orthogonality") {
    Grid g(512, 20.0);
    SolitonParams p{0.0, 1.0};
    PerturbationSpec spec;
    spec.kind = PerturbationSpec::Kind::random_smooth;
    spec.omega0 = 0.02;
    spec.seed = 7;
    RealField pert = build_perturbation(g, spec, p);
    CHECK(h1_norm(pert) == doctest::Approx(0.02).epsilon(1e-12));

    spec.orthogonalize = true;
    RealField orth = build_perturbation(g, spec, p);
    CHECK(h1_norm(orth) == doctest::Approx(0.02).epsilon(1e-12));
    RealField e = eta(g, p);
    RealField me = multiply(displacement_field(g, p.a), e);
    CHECK(std::abs(inner(orth, e)) < 1e-10);
    CHECK(std::abs(inner(orth, me)) < 1e-10);

    // determinism: same seed, same field
    RealField again = build_perturbation(g, spec, p);
    CHECK(again.v == orth.v);
}

TEST_CASE("free-flow comparison: PDE and ODE agree to the fit floor") {
    RunConfig cfg;
    cfg.frame = Frame::physical;
    cfg.epsilon = 0.0;
    cfg.n = 512;
    cfg.half_length = 20.0;
    cfg.potential_preset = "zero";
    cfg.a0 = 0.0;
    cfg.c0 = 1.0;
    cfg.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.snapshot_every = 100;
    const ComparisonReport rep = run_compare(cfg);
    CHECK(rep.max_da < 1e-5);
    CHECK(rep.max_dc < 1e-5);
    CHECK(rep.rows.size() == 11);
    // the deviation never leaves the fit floor on the free flow
    CHECK(rep.max_w_h1 < 1e-8);
}

TEST_CASE("comparison artifacts land on disk and are deterministic") {
    RunConfig cfg;
    cfg.frame = Frame::rescaled;
    cfg.epsilon = 0.01;
    cfg.n = 256;
    cfg.potential_preset = "paper-v1";
    cfg.a0 = 0.0;
    cfg.c0 = 1.0;  // C0 = eps^{-1/3}
    cfg.dt = 2.5e-5;
    cfg.t_final = 0.01;
    cfg.snapshot_every = 100;
    const auto dir1 = std::filesystem::temp_directory_path() / "mkdvlab_cmp1";
    const auto dir2 = std::filesystem::temp_directory_path() / "mkdvlab_cmp2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    run_compare(cfg, dir1);
    run_compare(cfg, dir2);
    for (const char* name :
         {"comparison.csv", "track.csv", "ode.csv", "diagnostics.csv", "config.ini"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(dir1 / name));
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
    CHECK(std::filesystem::exists(dir1 / "report.json"));
}

TEST_CASE("physical and rescaled frames produce matching tracks") {
    // the two runs are the same discrete system under the scaling map
    const double eps = 0.01;
    RunConfig resc;
    resc.frame = Frame::rescaled;
    resc.epsilon = eps;
    resc.n = 256;
    resc.potential_preset = "paper-v1";
    resc.a0 = 0.0;
    resc.c0 = 1.0;
    resc.dt = 1.25e-5;
    resc.t_final = 0.02;
    resc.snapshot_every = 160;
    const ComparisonReport r1 = run_compare(resc);

    RunConfig phys = resc;
    phys.frame = Frame::physical;
    phys.dt = resc.dt / eps;
    phys.t_final = resc.t_final / eps;
    const ComparisonReport r2 = run_compare(phys);

    REQUIRE(r1.pde_track.size() == r2.pde_track.size());
    const double s = std::cbrt(eps);
    for (std::size_t i = 0; i < r1.pde_track.size(); ++i) {
        // a_phys = A / eps^{1/3}, c_phys = eps^{1/3} C
        CHECK(std::abs(r2.pde_track[i].a - r1.pde_track[i].a / s) < 1e-6);
        CHECK(std::abs(r2.pde_track[i].c - s * r1.pde_track[i].c) < 1e-6);
    }
}

TEST_CASE("scaling study input validation") {
    RunConfig base = preset_fig(1);
    CHECK_THROWS_AS(run_scaling(base, {0.01}), std::invalid_argument);
    CHECK_THROWS_AS(run_scaling(base, {0.01, 0.02}), std::invalid_argument);
}

TEST_CASE("check suites pass on a healthy build and reject unknown names") {
    for (const std::string& name : check_suite_names()) {
        CAPTURE(name);
        for (const CheckResult& r : run_check_suite(name)) {
            CAPTURE(r.name);
            CAPTURE(r.details);
            CHECK(r.pass);
        }
    }
    CHECK_THROWS_AS(run_check_suite("nonsense"), std::invalid_argument);
}

TEST_CASE("fitted envelope constant is stable under eps -> eps/4") {
    // matched eps^{1/2} t horizons, pure soliton data, paper-v1
    auto fitted_c = [](double eps, double t_final, double dt) {
        RunConfig cfg;
        cfg.frame = Frame::rescaled;
        cfg.epsilon = eps;
        cfg.n = 512;
        cfg.potential_preset = "paper-v1";
        cfg.a0 = 0.0;
        cfg.c0 = 1.0;
        cfg.dt = dt;
        cfg.t_final = t_final;
        cfg.snapshot_every = 160;
        return run_compare(cfg).envelope_C_predictive;
    };
    const double c_base = fitted_c(0.01, 0.02, 6.25e-6);
    const double c_quarter = fitted_c(0.0025, 0.01, 3.125e-6);
    const double ratio = c_base / c_quarter;
    CHECK(ratio > 1.0 / 3.0);
    CHECK(ratio < 3.0);
}

TEST_CASE("doubling the injected perturbation doubles the early-time deviation") {
    auto max_w = [](double omega0) {
        RunConfig cfg;
        cfg.frame = Frame::physical;
        cfg.epsilon = 0.0;
        cfg.n = 512;
        cfg.half_length = 20.0;
        cfg.potential_preset = "zero";
        cfg.a0 = 0.0;
        cfg.c0 = 1.0;
        cfg.dt = 1e-3;
        cfg.t_final = 0.2;
        cfg.snapshot_every = 40;
        cfg.perturbation.kind = PerturbationSpec::Kind::random_smooth;
        cfg.perturbation.omega0 = omega0;
        cfg.perturbation.seed = 5;
        cfg.perturbation.orthogonalize = true;
        const ComparisonReport rep = run_compare(cfg);
        CHECK(rep.omega0 > 0.5 * omega0);  // the fit sees the injected size
        return rep.max_w_h1;
    };
    const double ratio = max_w(2e-3) / max_w(1e-3);
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
}
