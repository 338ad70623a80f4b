#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the spectral core and the time stepper.
// Every kernel has a serial reference implementation and an OpenMP variant;
// the two produce bit-identical results (reductions use a fixed blocked
// pairwise scheme whose result does not depend on the thread count), so the
// serial path doubles as the oracle for the parallel one in tests and in the
// mkdv_bench comparison target.

namespace mkdv::kernels {

enum class Exec { serial, openmp };

bool openmp_available();
int max_threads();

// Process-wide default, initialized from MKDV_EXEC ("serial"/"openmp").
Exec default_exec();
void set_default_exec(Exec ex);

using cplx = std::complex<double>;

// Pointwise maps. Output may alias an input of the same length.
void cube(std::span<const double> in, std::span<double> out, Exec ex = default_exec());
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out, Exec ex = default_exec());
// out = a + s*b
void add_scaled(std::span<const double> a, double s, std::span<const double> b,
                std::span<double> out, Exec ex = default_exec());
void cadd_scaled(std::span<const cplx> a, cplx s, std::span<const cplx> b,
                 std::span<cplx> out, Exec ex = default_exec());
void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out,
          Exec ex = default_exec());
// out = v + (h/6)*(k1 + 2 k2 + 2 k3 + k4), the RK4 update fused in one pass
void rk4_combine(std::span<const cplx> v, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double h, std::span<cplx> out,
                 Exec ex = default_exec());
// Enforce conjugate symmetry of a length-n spectrum in FFT storage order
// (slot 0 and slot n/2 made real, paired slots averaged against conjugates).
void symmetrize_spectrum(std::span<cplx> c, Exec ex = default_exec());

// Reductions. Blocked pairwise summation: identical result for both Exec
// modes and any thread count.
double sum(std::span<const double> a, Exec ex = default_exec());
double dot(std::span<const double> a, std::span<const double> b, Exec ex = default_exec());
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, Exec ex = default_exec());
double max_abs(std::span<const double> a, Exec ex = default_exec());
double max_abs(std::span<const cplx> a, Exec ex = default_exec());
bool all_finite(std::span<const cplx> a, Exec ex = default_exec());

}  // namespace mkdv::kernels
