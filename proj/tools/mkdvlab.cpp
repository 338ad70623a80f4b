#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mkdvlab/diagnostics.hpp"
#include "mkdvlab/errors.hpp"
#include "mkdvlab/experiments.hpp"
#include "mkdvlab/io.hpp"
#include "mkdvlab/solver.hpp"
#include "mkdvlab/spectral.hpp"

namespace {

using namespace mkdv;

// "paper-v1" | "cos2:-10:6;sin:6:10" (waveform:amp:freq[:phase] terms)
PotentialSpec parse_potential_arg(const std::string& arg) {
    if (PotentialSpec::is_preset(arg)) return PotentialSpec::preset(arg);
    PotentialSpec spec;
    std::stringstream terms(arg);
    std::string term;
    while (std::getline(terms, term, ';')) {
        if (term.empty()) continue;
        std::stringstream fields(term);
        std::string kind, amp, freq, phase;
        std::getline(fields, kind, ':');
        std::getline(fields, amp, ':');
        std::getline(fields, freq, ':');
        std::getline(fields, phase, ':');
        if (kind.empty() || amp.empty())
            throw std::invalid_argument("potential term needs waveform:amp[:freq[:phase]]: " +
                                        term);
        spec.terms.push_back({std::stod(amp), waveform_from_name(kind),
                              freq.empty() ? 0.0 : std::stod(freq),
                              phase.empty() ? 0.0 : std::stod(phase)});
    }
    if (spec.terms.empty()) throw std::invalid_argument("empty potential spec: " + arg);
    return spec;
}

struct RunFlags {
    std::string config_path;
    std::string preset;
    std::string frame;
    std::string potential;
    std::string perturb_kind;
    RunConfig cfg;
    bool perturb_orthogonalize = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_path, "load a key = value run config file");
    cmd->add_option("--preset", f.preset, "run preset: fig1 or fig2");
    cmd->add_option("--frame", f.frame, "rescaled | physical");
    cmd->add_option("--epsilon", f.cfg.epsilon, "perturbation strength");
    cmd->add_option("--n", f.cfg.n, "grid points (power of two)");
    cmd->add_option("--half-length", f.cfg.half_length,
                    "domain half-length (0 = derive from frame)");
    cmd->add_option("--potential", f.potential,
                    "preset name or waveform:amp:freq[:phase];... list");
    cmd->add_option("--a0", f.cfg.a0, "initial position (physical frame)");
    cmd->add_option("--c0", f.cfg.c0, "initial scale (physical frame)");
    cmd->add_option("--dt", f.cfg.dt, "time step (run frame)");
    cmd->add_option("--t-final", f.cfg.t_final, "end time (run frame)");
    cmd->add_option("--snapshot-every", f.cfg.snapshot_every, "steps between snapshots");
    cmd->add_option("--seed", f.cfg.seed, "run seed");
    cmd->add_option("--perturb", f.perturb_kind, "initial perturbation: none|cosine|random");
    cmd->add_option("--perturb-omega0", f.cfg.perturbation.omega0, "perturbation H1 size");
    cmd->add_option("--perturb-mode", f.cfg.perturbation.mode, "cosine mode index");
    cmd->add_option("--perturb-bandwidth", f.cfg.perturbation.bandwidth, "random band");
    cmd->add_option("--perturb-seed", f.cfg.perturbation.seed, "perturbation seed");
    cmd->add_flag("--perturb-orthogonalize", f.perturb_orthogonalize,
                  "project out the tangent components");
}

RunConfig resolve_run_config(const RunFlags& f, const CLI::App* cmd) {
    RunConfig cfg;
    if (!f.preset.empty()) cfg = run_preset(f.preset);
    if (!f.config_path.empty()) cfg = run_config_from(cfg::Config::load(f.config_path));

    auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (given("--frame")) {
        if (f.frame == "rescaled")
            cfg.frame = Frame::rescaled;
        else if (f.frame == "physical")
            cfg.frame = Frame::physical;
        else
            throw std::invalid_argument("--frame must be rescaled or physical");
    }
    if (given("--epsilon")) cfg.epsilon = f.cfg.epsilon;
    if (given("--n")) cfg.n = f.cfg.n;
    if (given("--half-length")) cfg.half_length = f.cfg.half_length;
    if (given("--potential")) {
        if (PotentialSpec::is_preset(f.potential)) {
            cfg.potential_preset = f.potential;
        } else {
            cfg.potential_preset.clear();
            cfg.potential = parse_potential_arg(f.potential);
        }
    }
    if (given("--a0")) cfg.a0 = f.cfg.a0;
    if (given("--c0")) cfg.c0 = f.cfg.c0;
    if (given("--dt")) cfg.dt = f.cfg.dt;
    if (given("--t-final")) cfg.t_final = f.cfg.t_final;
    if (given("--snapshot-every")) cfg.snapshot_every = f.cfg.snapshot_every;
    if (given("--seed")) cfg.seed = f.cfg.seed;
    if (given("--perturb")) {
        if (f.perturb_kind == "none")
            cfg.perturbation.kind = PerturbationSpec::Kind::none;
        else if (f.perturb_kind == "cosine")
            cfg.perturbation.kind = PerturbationSpec::Kind::cosine;
        else if (f.perturb_kind == "random")
            cfg.perturbation.kind = PerturbationSpec::Kind::random_smooth;
        else
            throw std::invalid_argument("--perturb must be none, cosine or random");
    }
    if (given("--perturb-omega0")) cfg.perturbation.omega0 = f.cfg.perturbation.omega0;
    if (given("--perturb-mode")) cfg.perturbation.mode = f.cfg.perturbation.mode;
    if (given("--perturb-bandwidth"))
        cfg.perturbation.bandwidth = f.cfg.perturbation.bandwidth;
    if (given("--perturb-seed")) cfg.perturbation.seed = f.cfg.perturbation.seed;
    if (f.perturb_orthogonalize) cfg.perturbation.orthogonalize = true;
    return cfg;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, const std::string& format) {
    const Grid grid = cfg.make_grid();
    const SolitonParams initial = cfg.frame_initial();
    RealField u0 = eta(grid, initial);
    if (cfg.perturbation.kind != PerturbationSpec::Kind::none && cfg.perturbation.omega0 > 0.0)
        u0 = add_scaled(u0, 1.0, build_perturbation(grid, cfg.perturbation, initial));

    SolverConfig sc;
    sc.grid = grid;
    sc.potential = cfg.resolved_potential();
    sc.gamma = cfg.gamma();
    sc.dt = cfg.dt;
    sc.t_final = cfg.t_final;
    sc.snapshot_every = cfg.snapshot_every;

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    to_config(cfg).save(dir / "config.ini");

    std::vector<Snapshot> snapshots;
    evolve(u0, sc, [&](double t, const RealField& u) { snapshots.push_back({t, u}); });

    if (format == "binary")
        io::write_snapshots_binary(dir / "snapshots.bin", snapshots, grid, cfg.dt);
    else
        io::write_snapshots_csv(dir / "snapshots.csv", snapshots);

    std::ofstream conserved_csv(dir / "conserved.csv");
    conserved_csv << "t,mass,momentum,hamiltonian\n";
    for (const Snapshot& s : snapshots) {
        const ConservedTriple c = conserved(s.u);
        conserved_csv << io::format_double(s.t) << "," << io::format_double(c.mass) << ","
                      << io::format_double(c.momentum) << ","
                      << io::format_double(c.hamiltonian) << "\n";
    }
    std::cout << "wrote " << snapshots.size() << " snapshots to " << dir.string() << "\n";
    return 0;
}

int cmd_check(const std::string& suite) {
    std::vector<std::string> suites =
        suite == "all" ? check_suite_names() : std::vector<std::string>{suite};
    bool all_pass = true;
    for (const std::string& name : suites) {
        for (const CheckResult& r : run_check_suite(name)) {
            std::printf("[%s] %-12s %-32s %s\n", r.pass ? "PASS" : "FAIL", name.c_str(),
                        r.name.c_str(), r.details.c_str());
            all_pass = all_pass && r.pass;
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mkdvlab: soliton dynamics laboratory for the perturbed mKdV equation"};
    app.require_subcommand(1);

    RunFlags sim_flags, cmp_flags, scl_flags;
    std::string sim_out = "out/simulate", sim_format = "csv";
    CLI::App* sim = app.add_subcommand("simulate", "evolve the PDE and write snapshots");
    add_run_flags(sim, sim_flags);
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--snapshot-format", sim_format, "csv | binary");

    double eff_epsilon = 0.01, eff_a0 = 0.0, eff_c0 = 1.0, eff_dt = 1e-3, eff_t = 1.0;
    double eff_window = 40.0;
    int eff_points = 2048, eff_stride = 1;
    std::string eff_potential = "paper-v1", eff_out = "out/effective";
    CLI::App* eff = app.add_subcommand("effective", "integrate the parameter ODEs");
    eff->add_option("--epsilon", eff_epsilon, "perturbation strength");
    eff->add_option("--potential", eff_potential, "preset or term list");
    eff->add_option("--a0", eff_a0, "initial position");
    eff->add_option("--c0", eff_c0, "initial scale");
    eff->add_option("--dt", eff_dt, "ODE step");
    eff->add_option("--t-final", eff_t, "end time");
    eff->add_option("--stride", eff_stride, "emission stride");
    eff->add_option("--bracket-window", eff_window, "bracket quadrature half-width");
    eff->add_option("--bracket-points", eff_points, "bracket quadrature resolution");
    eff->add_option("--out", eff_out, "output directory");

    std::string cmp_out = "out/compare";
    CLI::App* cmp = app.add_subcommand("compare", "PDE track vs effective ODE prediction");
    add_run_flags(cmp, cmp_flags);
    cmp->add_option("--out", cmp_out, "output directory");

    std::string scl_out = "out/scaling";
    std::vector<double> scl_epsilons;
    CLI::App* scl = app.add_subcommand("scaling", "discrepancy scaling across epsilon");
    add_run_flags(scl, scl_flags);
    scl->add_option("--epsilons", scl_epsilons, "decreasing epsilon list")
        ->required()
        ->delimiter(',');
    scl->add_option("--out", scl_out, "output directory");

    std::string check_suite;
    CLI::App* chk = app.add_subcommand("check", "run a named invariant suite");
    chk->add_option("suite", check_suite, "spectral|soliton|operator|weight|balance|all")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(resolve_run_config(sim_flags, sim), sim_out,
                                               sim_format);
        if (eff->parsed()) {
            EffectiveConfig ec;
            ec.epsilon = eff_epsilon;
            ec.potential = parse_potential_arg(eff_potential);
            ec.dt = eff_dt;
            ec.t_final = eff_t;
            ec.bracket_window = eff_window;
            ec.bracket_points = eff_points;
            ec.stride = eff_stride;
            const std::vector<OdeSample> samples = integrate_effective(ec, {eff_a0, eff_c0});
            std::filesystem::create_directories(eff_out);
            io::write_ode_csv(std::filesystem::path(eff_out) / "trajectory.csv", samples);
            std::cout << "wrote " << samples.size() << " samples to " << eff_out << "\n";
            return 0;
        }
        if (cmp->parsed()) {
            const ComparisonReport rep =
                run_compare(resolve_run_config(cmp_flags, cmp), cmp_out);
            std::cout << "max|da| = " << rep.max_da << "\nmax|dc| = " << rep.max_dc
                      << "\nmax|dc|/C0 = " << rep.max_dc_rel
                      << "\nenvelope C (predictive) = " << rep.envelope_C_predictive
                      << "\nartifacts in " << cmp_out << "\n";
            return 0;
        }
        if (scl->parsed()) {
            const ScalingReport rep =
                run_scaling(resolve_run_config(scl_flags, scl), scl_epsilons, scl_out);
            std::printf("%-12s %-12s %-12s %-12s\n", "epsilon", "max_dc_rel", "max_da",
                        "envelope_C");
            for (const ScalingRow& r : rep.rows)
                std::printf("%-12g %-12g %-12g %-12g\n", r.epsilon, r.max_dc_rel, r.max_da,
                            r.envelope_C);
            std::printf("fitted exponent (max_dc_rel vs eps): %g\n", rep.exponent_dc);
            return 0;
        }
        if (chk->parsed()) return cmd_check(check_suite);
    } catch (const NonFiniteError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        for (const auto& [t, sup] : e.sup_history)
            std::cerr << "  t=" << t << "  max|u|=" << sup << "\n";
        return 1;
    } catch (const NoConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const ScaleCollapseError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const cfg::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
