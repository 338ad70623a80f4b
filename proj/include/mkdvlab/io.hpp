#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mkdvlab/effective.hpp"
#include "mkdvlab/tracker.hpp"

namespace mkdv::io {

// Deterministic shortest-round-trip formatting; identical configs produce
// byte-identical files.
std::string format_double(double v);

// One row per snapshot: t, x_0 ... x_{n-1}
void write_snapshots_csv(const std::filesystem::path& path,
                         const std::vector<Snapshot>& snapshots);

// Compact binary: 32-byte header (magic "MKDVSNP1", u32 n, u32 reserved,
// f64 half_length, f64 dt), then per snapshot one f64 t followed by n f64
// samples, little-endian throughout.
void write_snapshots_binary(const std::filesystem::path& path,
                            const std::vector<Snapshot>& snapshots, const Grid& grid,
                            double dt);
std::vector<Snapshot> read_snapshots_binary(const std::filesystem::path& path);

// t, a, c, bracket_vee, bracket_vxe
void write_ode_csv(const std::filesystem::path& path, const std::vector<OdeSample>& samples);

// t, a_unwrapped, c, r1, r2, deviation_h1, iterations
void write_track_csv(const std::filesystem::path& path,
                     const std::vector<TrackSample>& samples);

struct ComparisonRow {
    double t, a_pde, c_pde, a_ode, c_ode, da, dc;
};
void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows);

struct DiagnosticsRow {
    double t, mass, momentum, hamiltonian, w_h1, w_weighted_h1, virial, energy_e,
        envelope_margin;
};
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows);

}  // namespace mkdv::io
