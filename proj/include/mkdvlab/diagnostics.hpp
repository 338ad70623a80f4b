#pragma once

#include <span>
#include <vector>

#include "mkdvlab/field.hpp"
#include "mkdvlab/potential.hpp"
#include "mkdvlab/soliton.hpp"
#include "mkdvlab/tracker.hpp"

namespace mkdv {

// Functionals used by the stability analysis: conserved quantities and their
// balance laws, the deviation field and the forcing projections, the
// linearized operator with its coercivity constant, the saturating virial
// weight, and the energy functional.

struct ConservedTriple {
    double mass;         // integral of u
    double momentum;     // (1/2) integral of u^2
    double hamiltonian;  // (1/2) integral of (u_x^2 - u^4)
};
ConservedTriple conserved(const RealField& u);

struct BalanceResiduals {
    double mass;      // |M(T) - M(0) - gamma * int int V u|
    double momentum;  // |P(T) - P(0) - gamma * int int V u^2|
};
// The flux term of the equation integrates to zero on the circle, so
// dM/dt = gamma int V u and dP/dt = gamma int V u^2 hold exactly; the time
// integrals are evaluated by composite Simpson over the snapshot cadence.
BalanceResiduals balance_residuals(const std::vector<Snapshot>& snapshots,
                                   const PotentialSpec& potential, double gamma);

RealField deviation(const RealField& u, SolitonParams p);

// F0 = (da/dt - c^2) d_a eta + dc/dt d_c eta - eps V eta, split into the
// symplectically parallel coefficients and the orthogonal remainder.
struct F0Projections {
    double alpha_a;       // coefficient of d_a eta in the parallel part
    double alpha_c;       // coefficient of d_c eta
    RealField orthogonal;
};
F0Projections f0_projections(const Grid& grid, SolitonParams p, double a_dot, double c_dot,
                             const PotentialSpec& potential, double epsilon);

// L = -d^2/dx^2 - 6 eta^2 + c^2
RealField apply_L(const RealField& w, SolitonParams p);

// E = (1/2) <L w, w> - 2 int eta w^3 - (1/2) int w^4
double energy_functional(const RealField& w, SolitonParams p);

// Saturating weight of the local virial functional. Phi = 1 on [0,1],
// exp(-x) on [2, inf), bridged on [1,2] by Phi = exp(-rho) with
// rho(1+t) = 5t^2 - 3t^3 (Hermite cubic: rho(1)=0, rho'(1)=0, rho(2)=2,
// rho'(2)=1), which keeps Phi monotone and inside [exp(-x), 3 exp(-x)].
class VirialWeight {
  public:
    explicit VirialWeight(double A = 10.0);

    double A() const { return A_; }
    double phi(double x) const;         // even
    double psi(double x) const;         // odd, int_0^x phi
    double psi_scaled(double x) const;  // Psi_A(x) = A psi(x/A)
    double psi_limit() const;           // lim_{x->inf} psi = int_0^inf phi

  private:
    double A_;
    std::vector<double> cum_;  // cumulative int_1^{panel edge} phi on [1,2]
    double psi_two_;           // psi(2)
};

double virial_functional(const RealField& w, SolitonParams p, const VirialWeight& weight);

struct WeightCheckReport {
    bool even_ok;
    bool plateau_ok;     // Phi = 1 on [0,1]
    bool tail_ok;        // Phi = exp(-x) on [2, inf)
    bool monotone_ok;    // Phi' <= 0 on (0, inf)
    bool sandwich_ok;    // exp(-x) <= Phi <= 3 exp(-x)
    bool psi_odd_ok;
    double max_violation;
    bool all_ok() const {
        return even_ok && plateau_ok && tail_ok && monotone_ok && sandwich_ok && psi_odd_ok;
    }
};
WeightCheckReport weight_checks(const VirialWeight& weight, int samples = 100000,
                                double x_max = 50.0);

enum class EnvelopeKind {
    orbital,     // C (omega + eps sqrt(t)) exp(C eps t)
    predictive,  // C (omega + eps sqrt(t)) exp(C sqrt(eps) t)
};

struct EnvelopeFit {
    double C;
    std::vector<double> margin;  // envelope(t_k) - w_k at the fitted C
};
// Smallest C making the envelope hold over the whole series (bisection; the
// admissible set in C is an interval).
EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> w, double epsilon,
                         double omega0, EnvelopeKind kind);

}  // namespace mkdv
