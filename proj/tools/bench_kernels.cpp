// Timing comparison of the serial reference kernels against the OpenMP
// variants, plus the full integrating-factor RK4 step at a few sizes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "mkdvlab/kernels.hpp"
#include "mkdvlab/soliton.hpp"
#include "mkdvlab/solver.hpp"
#include "mkdvlab/spectral.hpp"

namespace {

using namespace mkdv;
using kernels::Exec;

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void report(const char* name, std::size_t n, double serial_us, double openmp_us) {
    std::printf("%-16s n=%-8zu serial %10.2f us   openmp %10.2f us   speedup %5.2fx\n", name,
                n, serial_us, openmp_us, serial_us / openmp_us);
}

void bench_kernels(std::size_t n, int reps) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    std::vector<double> a(n), b(n), out(n);
    std::vector<kernels::cplx> ca(n), cb(n), cout(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = gauss(rng);
        b[i] = gauss(rng);
        ca[i] = {gauss(rng), gauss(rng)};
        cb[i] = {gauss(rng), gauss(rng)};
    }

    report("cube", n, time_of([&] { kernels::cube(a, out, Exec::serial); }, reps),
           time_of([&] { kernels::cube(a, out, Exec::openmp); }, reps));
    report("multiply", n, time_of([&] { kernels::multiply(a, b, out, Exec::serial); }, reps),
           time_of([&] { kernels::multiply(a, b, out, Exec::openmp); }, reps));
    report("cmul", n, time_of([&] { kernels::cmul(ca, cb, cout, Exec::serial); }, reps),
           time_of([&] { kernels::cmul(ca, cb, cout, Exec::openmp); }, reps));
    report("dot", n, time_of([&] { kernels::dot(a, b, Exec::serial); }, reps),
           time_of([&] { kernels::dot(a, b, Exec::openmp); }, reps));
    report("sum", n, time_of([&] { kernels::sum(a, Exec::serial); }, reps),
           time_of([&] { kernels::sum(a, Exec::openmp); }, reps));
    report("symmetrize", n,
           time_of([&] { kernels::symmetrize_spectrum(cout, Exec::serial); }, reps),
           time_of([&] { kernels::symmetrize_spectrum(cout, Exec::openmp); }, reps));
}

void bench_step(int n, int reps) {
    SolverConfig cfg;
    cfg.grid = Grid(n, 20.0);
    cfg.potential = PotentialSpec::preset("zero");
    cfg.gamma = 0.0;
    cfg.dt = 1e-4;
    EvolutionState state{0.0, forward(eta(cfg.grid, {0.0, 1.0})), 0};

    kernels::set_default_exec(Exec::serial);
    const double serial_us = time_of([&] { state = step(state, cfg); }, reps);
    kernels::set_default_exec(Exec::openmp);
    const double openmp_us = time_of([&] { state = step(state, cfg); }, reps);
    report("rk4 step", static_cast<std::size_t>(n), serial_us, openmp_us);
}

}  // namespace

int main() {
    std::printf("mkdvlab kernel benchmark (%d OpenMP threads available)\n",
                kernels::max_threads());
    for (std::size_t n : {1u << 12, 1u << 16, 1u << 20}) bench_kernels(n, 19);
    for (int n : {1024, 4096}) bench_step(n, 9);
    return 0;
}
