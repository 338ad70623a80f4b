#include "mkdvlab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mkdv::io {
namespace {

constexpr char kMagic[8] = {'M', 'K', 'D', 'V', 'S', 'N', 'P', '1'};

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void put_f64(std::ofstream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_snapshots_csv(const std::filesystem::path& path,
                         const std::vector<Snapshot>& snapshots) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t";
    if (!snapshots.empty())
        for (int j = 0; j < snapshots.front().u.n(); ++j) out << ",x_" << j;
    out << "\n";
    for (const Snapshot& s : snapshots) {
        out << format_double(s.t);
        for (double v : s.u.v) out << "," << format_double(v);
        out << "\n";
    }
}

void write_snapshots_binary(const std::filesystem::path& path,
                            const std::vector<Snapshot>& snapshots, const Grid& grid,
                            double dt) {
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out.write(kMagic, 8);
    put_u32(out, static_cast<std::uint32_t>(grid.n));
    put_u32(out, 0);
    put_f64(out, grid.half_length);
    put_f64(out, dt);
    for (const Snapshot& s : snapshots) {
        put_f64(out, s.t);
        for (double v : s.u.v) put_f64(out, v);
    }
}

std::vector<Snapshot> read_snapshots_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("bad snapshot file magic: " + path.string());
    const std::uint32_t n = get_u32(in);
    get_u32(in);
    const double half_length = get_f64(in);
    get_f64(in);  // dt, informational
    Grid grid(static_cast<int>(n), half_length);
    std::vector<Snapshot> out;
    while (true) {
        const double t = get_f64(in);
        if (!in) break;
        RealField u(grid);
        for (std::uint32_t j = 0; j < n; ++j) u.v[j] = get_f64(in);
        if (!in) throw std::runtime_error("truncated snapshot file: " + path.string());
        out.push_back({t, std::move(u)});
    }
    return out;
}

void write_ode_csv(const std::filesystem::path& path, const std::vector<OdeSample>& samples) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,a,c,bracket_vee,bracket_vxe\n";
    for (const OdeSample& s : samples)
        out << format_double(s.t) << "," << format_double(s.a) << "," << format_double(s.c)
            << "," << format_double(s.vee) << "," << format_double(s.vxe) << "\n";
}

void write_track_csv(const std::filesystem::path& path,
                     const std::vector<TrackSample>& samples) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,a_unwrapped,c,r1,r2,deviation_h1,iterations\n";
    for (const TrackSample& s : samples)
        out << format_double(s.t) << "," << format_double(s.a) << "," << format_double(s.c)
            << "," << format_double(s.r1) << "," << format_double(s.r2) << ","
            << format_double(s.deviation_h1) << "," << s.iterations << "\n";
}

void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,a_pde,c_pde,a_ode,c_ode,da,dc\n";
    for (const ComparisonRow& r : rows)
        out << format_double(r.t) << "," << format_double(r.a_pde) << ","
            << format_double(r.c_pde) << "," << format_double(r.a_ode) << ","
            << format_double(r.c_ode) << "," << format_double(r.da) << ","
            << format_double(r.dc) << "\n";
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,mass,momentum,hamiltonian,w_h1,w_weighted_h1,virial,energy_E,envelope_margin\n";
    for (const DiagnosticsRow& r : rows)
        out << format_double(r.t) << "," << format_double(r.mass) << ","
            << format_double(r.momentum) << "," << format_double(r.hamiltonian) << ","
            << format_double(r.w_h1) << "," << format_double(r.w_weighted_h1) << ","
            << format_double(r.virial) << "," << format_double(r.energy_e) << ","
            << format_double(r.envelope_margin) << "\n";
}

}  // namespace mkdv::io
