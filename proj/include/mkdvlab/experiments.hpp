#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mkdvlab/config.hpp"
#include "mkdvlab/diagnostics.hpp"
#include "mkdvlab/effective.hpp"
#include "mkdvlab/io.hpp"
#include "mkdvlab/potential.hpp"
#include "mkdvlab/solver.hpp"
#include "mkdvlab/tracker.hpp"

namespace mkdv {

// Batch front-end: frame handling, figure presets, the ODE-vs-PDE comparison
// pipeline, and epsilon-scaling studies. The rescaled frame solves
// d/dT U = d/dX(-U_XX - 2U^3) + V(X) U on [-pi, pi) with U(0) = eta(X, A0, C0),
// (A0, C0) = (eps^{1/3} a0, eps^{-1/3} c0); the physical frame solves the
// original equation with coupling eps on [-pi eps^{-1/3}, pi eps^{-1/3}).

enum class Frame { rescaled, physical };

struct PerturbationSpec {
    enum class Kind { none, cosine, random_smooth };
    Kind kind = Kind::none;
    int mode = 3;       // cosine wavenumber index
    int bandwidth = 8;  // random-smooth band
    double omega0 = 0.0;  // target H1 size
    unsigned long seed = 1;
    bool orthogonalize = false;  // remove the symplectic-tangent components
};

struct RunConfig {
    Frame frame = Frame::rescaled;
    double epsilon = 0.01;
    int n = 1024;
    double half_length = 0.0;  // 0 -> pi (rescaled) or pi eps^{-1/3} (physical)
    std::string potential_preset = "paper-v1";  // empty -> use `potential`
    PotentialSpec potential;
    double a0 = 0.0;  // physical-frame initial data
    double c0 = 1.0;
    double dt = 4e-5;       // in the run's frame
    double t_final = 0.1;   // in the run's frame
    int snapshot_every = 25;
    PerturbationSpec perturbation;
    unsigned long seed = 0;

    double gamma() const { return frame == Frame::rescaled ? 1.0 : epsilon; }
    double epsilon_effective() const { return frame == Frame::rescaled ? 1.0 : epsilon; }
    double resolved_half_length() const;
    Grid make_grid() const;
    PotentialSpec resolved_potential() const;
    SolitonParams frame_initial() const;  // (A0, C0) in the run's frame
};

// Figure presets (potentials and method from the source figures; epsilon,
// initial data, resolution and horizon are fixed here since the figures do
// not state them): rescaled frame, eps = 0.01, (A0, C0) = (0, 1), n = 1024,
// T = sqrt(eps).
RunConfig preset_fig(int which);  // 1 or 2
bool is_run_preset(const std::string& name);
RunConfig run_preset(const std::string& name);  // "fig1", "fig2"

RealField build_perturbation(const Grid& grid, const PerturbationSpec& pert,
                             SolitonParams around);

struct ComparisonReport {
    std::vector<io::ComparisonRow> rows;
    std::vector<TrackSample> pde_track;
    std::vector<OdeSample> ode_track;
    std::vector<io::DiagnosticsRow> diagnostics;
    double max_da = 0.0;      // run frame, unwrapped positions
    double max_dc = 0.0;
    double max_dc_rel = 0.0;  // max|dc| / C0 (frame invariant)
    double omega0 = 0.0;      // measured ||w(0)||_H1, physical frame
    double max_w_h1 = 0.0;    // run frame
    double envelope_C_orbital = 0.0;     // fitted on physical-frame series
    double envelope_C_predictive = 0.0;
    double max_rho_a = 0.0;   // modulation residuals, run frame
    double max_rho_c = 0.0;
    double t_eps_half = 0.0;  // eps^{1/2} * t_phys at the horizon (regime gauge)
};

// PDE evolve -> symplectic track -> effective ODE on aligned timestamps.
// With outdir set, writes comparison/track/ode/diagnostics CSVs, the resolved
// config, and report.json; partial artifacts are preserved when the solver or
// tracker fails.
ComparisonReport run_compare(const RunConfig& config,
                             const std::filesystem::path& outdir = {});

struct ScalingRow {
    double epsilon;
    double t_final;      // run-frame horizon
    double max_dc_rel;
    double max_da;
    double envelope_C;   // predictive fit
    double max_w_h1;
    double max_rho;      // max(|rho_a|, |rho_c|)
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    double exponent_dc = 0.0;   // log-log slope of max_dc_rel vs eps
    double exponent_rho_w = 0.0;  // log(rho ratio) / log(w ratio), first vs last
};

// Reruns the base config across the given epsilons (>= 2, strictly
// decreasing) at matched ~eps^{1/2} rescaled horizons and fits the power law
// of the parameter discrepancy.
ScalingReport run_scaling(const RunConfig& base, const std::vector<double>& epsilons,
                          const std::filesystem::path& outdir = {});

struct CheckResult {
    std::string name;
    bool pass;
    std::string details;
};
// Suites: spectral, soliton, operator, weight, balance. Throws
// std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_check_suite(const std::string& suite);
std::vector<std::string> check_suite_names();

cfg::Config to_config(const RunConfig& config);
RunConfig run_config_from(const cfg::Config& config);

}  // namespace mkdv
