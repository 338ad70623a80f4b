#include <cmath>
#include <random>

#include "doctest.h"
#include "mkdvlab/potential.hpp"

using namespace mkdv;

TEST_CASE("paper presets at the origin") {
    CHECK(PotentialSpec::preset("paper-v1").eval(0.0) == doctest::Approx(-10.0));
    CHECK(PotentialSpec::preset("paper-v2").eval(0.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(PotentialSpec::preset("paper-v3"), std::invalid_argument);
}

TEST_CASE("derivative matches a centered finite difference") {
    PotentialSpec spec{{{-10.0, Waveform::cos2, 6.0, 0.3},
                        {6.0, Waveform::sin, 10.0, -1.2},
                        {2.5, Waveform::cos, 4.0, 0.0},
                        {0.7, Waveform::linear, 0.0, 0.0}}};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uniform(-3.0, 3.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        const double x = uniform(rng);
        const double fd = (spec.eval(x + h) - spec.eval(x - h)) / (2.0 * h);
        CHECK(std::abs(spec.eval_derivative(x) - fd) < 1e-7);
    }
}

TEST_CASE("periodicity validation") {
    const PotentialSpec v1 = PotentialSpec::preset("paper-v1");
    CHECK(v1.is_periodic(M_PI));
    CHECK(v1.is_periodic(2.0 * M_PI));
    CHECK_FALSE(v1.is_periodic(1.1 * M_PI));
    CHECK_FALSE(PotentialSpec::linear_x().is_periodic(M_PI));
    CHECK(PotentialSpec::constant(3.0).is_periodic(17.0));
    // cos^2 oscillates at twice its nominal frequency
    PotentialSpec half{{{1.0, Waveform::cos2, 0.5, 0.0}}};
    CHECK(half.is_periodic(M_PI));
    PotentialSpec sin_half{{{1.0, Waveform::sin, 0.5, 0.0}}};
    CHECK_FALSE(sin_half.is_periodic(M_PI));

    for (const auto& spec : {PotentialSpec::preset("paper-v1"), PotentialSpec::preset("paper-v2")}) {
        for (int i = 0; i < 200; ++i) {
            const double x = -M_PI + 2.0 * M_PI * i / 200.0;
            CHECK(spec.eval(x + 2.0 * M_PI) == doctest::Approx(spec.eval(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sup bounds dominate dense sampling") {
    const PotentialSpec v1 = PotentialSpec::preset("paper-v1");
    const double vb = v1.sup_bound();
    const double db = v1.derivative_sup_bound();
    CHECK(vb == doctest::Approx(16.0));
    double vmax = 0.0, dmax = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double x = -M_PI + 2.0 * M_PI * i / 20000.0;
        vmax = std::max(vmax, std::abs(v1.eval(x)));
        dmax = std::max(dmax, std::abs(v1.eval_derivative(x)));
    }
    CHECK(vmax <= vb + 1e-12);
    CHECK(dmax <= db + 1e-12);
    CHECK(v1.c1_bound() == doctest::Approx(vb + db));
    CHECK(std::isinf(PotentialSpec::linear_x().sup_bound()));
}

TEST_CASE("waveform names round-trip") {
    for (Waveform w : {Waveform::sin, Waveform::cos, Waveform::cos2, Waveform::linear})
        CHECK(waveform_from_name(waveform_name(w)) == w);
    CHECK_THROWS_AS(waveform_from_name("tanh"), std::invalid_argument);
}
