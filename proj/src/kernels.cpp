#include "mkdvlab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef MKDV_HAVE_OPENMP
#include <omp.h>
#endif

namespace mkdv::kernels {
namespace {

// Below this size the OpenMP variants run the serial loop; fork/join overhead
// dominates for short arrays.
constexpr std::size_t kParallelThreshold = 8192;

// Reduction block size. Each block is summed serially in index order; block
// partials are combined by a pairwise tree. Both stages are independent of
// the thread assignment.
constexpr std::size_t kBlock = 1024;

Exec g_default = [] {
    if (const char* env = std::getenv("MKDV_EXEC")) {
        if (std::strcmp(env, "serial") == 0) return Exec::serial;
        if (std::strcmp(env, "openmp") == 0) return Exec::openmp;
    }
    return openmp_available() ? Exec::openmp : Exec::serial;
}();

bool use_parallel(Exec ex, std::size_t n) {
    return ex == Exec::openmp && openmp_available() && n >= kParallelThreshold;
}

double pairwise_combine(std::span<const double> partial) {
    if (partial.size() == 1) return partial[0];
    std::vector<double> level(partial.begin(), partial.end());
    while (level.size() > 1) {
        std::size_t half = (level.size() + 1) / 2;
        for (std::size_t i = 0; i < level.size() / 2; ++i)
            level[i] = level[2 * i] + level[2 * i + 1];
        if (level.size() % 2 != 0) level[half - 1] = level.back();
        level.resize(half);
    }
    return level[0];
}

// Shared driver for sum-like reductions: f(i) is the per-element term.
template <class Term>
double blocked_reduce(std::size_t n, Term&& term, Exec ex) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks);
    const bool par = use_parallel(ex, n);
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    (void)par;
    return pairwise_combine(partial);
}

template <class Term>
double blocked_max(std::size_t n, Term&& term, Exec ex) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks);
    const bool par = use_parallel(ex, n);
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, term(i));
        partial[static_cast<std::size_t>(b)] = m;
    }
    (void)par;
    return *std::max_element(partial.begin(), partial.end());
}

}  // namespace

bool openmp_available() {
#ifdef MKDV_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef MKDV_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Exec default_exec() { return g_default; }
void set_default_exec(Exec ex) { g_default = ex; }

void cube(std::span<const double> in, std::span<double> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
    const bool par = use_parallel(ex, in.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = in[i] * in[i] * in[i];
    (void)par;
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const bool par = use_parallel(ex, a.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
    (void)par;
}

void add_scaled(std::span<const double> a, double s, std::span<const double> b,
                std::span<double> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const bool par = use_parallel(ex, a.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
    (void)par;
}

void cadd_scaled(std::span<const cplx> a, cplx s, std::span<const cplx> b,
                 std::span<cplx> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const bool par = use_parallel(ex, a.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
    (void)par;
}

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const bool par = use_parallel(ex, a.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
    (void)par;
}

void rk4_combine(std::span<const cplx> v, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double h, std::span<cplx> out, Exec ex) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    const double h6 = h / 6.0;
    const bool par = use_parallel(ex, v.size());
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = v[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    (void)par;
}

void symmetrize_spectrum(std::span<cplx> c, Exec ex) {
    const std::size_t n = c.size();
    if (n < 2) return;
    c[0] = cplx(c[0].real(), 0.0);
    c[n / 2] = cplx(c[n / 2].real(), 0.0);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n / 2);
    const bool par = use_parallel(ex, n);
#ifdef MKDV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t j = 1; j < half; ++j) {
        const cplx m = 0.5 * (c[j] + std::conj(c[n - j]));
        c[j] = m;
        c[n - j] = std::conj(m);
    }
    (void)par;
}

double sum(std::span<const double> a, Exec ex) {
    return blocked_reduce(a.size(), [&](std::size_t i) { return a[i]; }, ex);
}

double dot(std::span<const double> a, std::span<const double> b, Exec ex) {
    return blocked_reduce(a.size(), [&](std::size_t i) { return a[i] * b[i]; }, ex);
}

double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, Exec ex) {
    return blocked_reduce(a.size(), [&](std::size_t i) { return a[i] * b[i] * c[i]; }, ex);
}

double max_abs(std::span<const double> a, Exec ex) {
    return blocked_max(a.size(), [&](std::size_t i) { return std::abs(a[i]); }, ex);
}

double max_abs(std::span<const cplx> a, Exec ex) {
    return blocked_max(a.size(), [&](std::size_t i) { return std::abs(a[i]); }, ex);
}

bool all_finite(std::span<const cplx> a, Exec ex) {
    // max over the indicator of badness; avoids early-exit divergence between
    // the serial and parallel paths
    const double bad = blocked_max(
        a.size(),
        [&](std::size_t i) {
            return (std::isfinite(a[i].real()) && std::isfinite(a[i].imag())) ? 0.0 : 1.0;
        },
        ex);
    return bad == 0.0;
}

}  // namespace mkdv::kernels
