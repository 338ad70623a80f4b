#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mkdvlab/config.hpp"
#include "mkdvlab/io.hpp"
#include "mkdvlab/soliton.hpp"

using namespace mkdv;

namespace {

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "mkdvlab_test_io";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parse, defaults, and round-trip") {
    const std::string text = R"(# run setup
top_level = 7
[run]
frame = rescaled
epsilon = 0.01   # inline comment
flag = true
[grid]
n = 1024
values = 1.5, 2.5, -3
)";
    cfg::Config c = cfg::Config::parse(text);
    CHECK(c.get_integer("", "top_level", 0) == 7);
    CHECK(c.get_string("run", "frame") == "rescaled");
    CHECK(c.get_number("run", "epsilon") == doctest::Approx(0.01));
    CHECK(c.get_bool("run", "flag", false));
    CHECK(c.get_number("run", "missing", 3.5) == 3.5);
    CHECK(c.get_numbers("grid", "values") == std::vector<double>{1.5, 2.5, -3.0});

    cfg::Config again = cfg::Config::parse(c.serialize());
    CHECK(again.serialize() == c.serialize());

    CHECK_THROWS_AS(cfg::Config::parse("[broken\n"), cfg::ParseError);
    CHECK_THROWS_AS(cfg::Config::parse("novalue\n"), cfg::ParseError);
    CHECK_THROWS_AS(c.get_number("run", "frame"), cfg::ParseError);
}

TEST_CASE("binary snapshot round-trip with header") {
    Grid g(64, 5.0);
    std::vector<Snapshot> snaps;
    for (int i = 0; i < 3; ++i) {
        RealField u = RealField::sample(g, [&](double x) { return std::sin(x + i); });
        snaps.push_back({0.25 * i, u});
    }
    const auto path = temp_dir() / "snap.bin";
    io::write_snapshots_binary(path, snaps, g, 0.25);
    CHECK(std::filesystem::file_size(path) == 32 + 3 * (1 + 64) * 8);

    const std::vector<Snapshot> back = io::read_snapshots_binary(path);
    REQUIRE(back.size() == snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        CHECK(back[i].t == snaps[i].t);
        CHECK(back[i].u.grid == g);
        CHECK(back[i].u.v == snaps[i].u.v);
    }
}

TEST_CASE("csv writers are deterministic") {
    Grid g(32, 2.0);
    std::vector<Snapshot> snaps{{0.0, RealField::sample(g, [](double x) { return x; })}};
    const auto p1 = temp_dir() / "a.csv";
    const auto p2 = temp_dir() / "b.csv";
    io::write_snapshots_csv(p1, snaps);
    io::write_snapshots_csv(p2, snaps);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).substr(0, 2) == "t,");

    std::vector<TrackSample> ts{{0.0, 0.1, 1.0, 1e-12, -2e-12, 0.01, 3}};
    const auto p3 = temp_dir() / "track.csv";
    io::write_track_csv(p3, ts);
    CHECK(slurp(p3).rfind("t,a_unwrapped,c,r1,r2,deviation_h1,iterations\n", 0) == 0);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0 / 3.0, -2.718281828459045e-7, 6.02e23}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}
