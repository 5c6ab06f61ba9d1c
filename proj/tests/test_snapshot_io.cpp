// NSEF snapshot files and trajectory directories.

#include <doctest.h>

#include "nselab/snapshot_io.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

using namespace nselab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("nselab_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("header layout")
{
    const fs::path dir = scratch("header");
    const auto f = taylor_green(Grid(8));
    write_snapshot(dir / "a.nsef", f, 0.25, 0.5);
    std::ifstream in(dir / "a.nsef", std::ios::binary);
    char magic[4];
    std::uint32_t version = 0, n = 0;
    double t = 0, nu = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&t), 8);
    in.read(reinterpret_cast<char*>(&nu), 8);
    CHECK(std::memcmp(magic, "NSEF", 4) == 0);
    CHECK(version == 1);
    CHECK(n == 8);
    CHECK(t == 0.25);
    CHECK(nu == 0.5);
    // First sample: u_x(0,0,0) = sin 0 cos 0 = 0; then x increases.
    double first[2];
    in.read(reinterpret_cast<char*>(first), 16);
    CHECK(std::abs(first[0]) <= 1e-15);
    CHECK(first[1] == doctest::Approx(std::sin(2 * std::numbers::pi / 8)).epsilon(1e-14));
    CHECK(fs::file_size(dir / "a.nsef") == 4 + 4 + 4 + 8 + 8 + 3 * 8 * 512);
}

TEST_CASE("round trip")
{
    const fs::path dir = scratch("roundtrip");
    const auto f = random_rough_field(1.0, 3, Grid(16));
    write_snapshot(dir / "r.nsef", f, 0.125, 2.0);
    const auto s = read_snapshot(dir / "r.nsef");
    CHECK(s.time == 0.125);
    CHECK(s.viscosity == 2.0);
    CHECK(l2_norm_spectral(s.field - f) <= 1e-14 * l2_norm_spectral(f));
}

TEST_CASE("corrupt files are rejected")
{
    const fs::path dir = scratch("corrupt");
    write_snapshot(dir / "ok.nsef", single_mode(Grid(8)), 0.0, 1.0);
    {
        std::fstream f(dir / "ok.nsef", std::ios::in | std::ios::out | std::ios::binary);
        f.write("XSEF", 4);
    }
    CHECK_THROWS_AS(read_snapshot(dir / "ok.nsef"), SnapshotError);

    write_snapshot(dir / "short.nsef", single_mode(Grid(8)), 0.0, 1.0);
    fs::resize_file(dir / "short.nsef", 100);
    CHECK_THROWS_AS(read_snapshot(dir / "short.nsef"), SnapshotError);
    CHECK_THROWS_AS(read_snapshot(dir / "missing.nsef"), SnapshotError);
}

TEST_CASE("trajectory directories")
{
    const fs::path dir = scratch("traj");
    Trajectory t(Grid(8), 0.5, SolverMode::Stokes);
    for (int k = 0; k < 4; ++k) t.push_back(0.1 * k, std::exp(-0.1 * k) * single_mode(Grid(8)));
    write_trajectory(dir, t);
    CHECK(fs::exists(dir / snapshot_name(3)));
    CHECK(snapshot_name(12).string() == "snap_000012.nsef");
    const auto back = load_trajectory(dir, SolverMode::Stokes);
    REQUIRE(back.size() == 4);
    CHECK(back.viscosity() == 0.5);
    CHECK(back.mode() == SolverMode::Stokes);
    CHECK(back[2].time == t[2].time);

    const fs::path empty = scratch("empty");
    CHECK_THROWS_WITH_AS(load_trajectory(empty), doctest::Contains("no snapshots"), SnapshotError);

    write_snapshot(dir / "snap_000004.nsef", single_mode(Grid(16)), 0.4, 0.5);
    CHECK_THROWS_WITH_AS(load_trajectory(dir), doctest::Contains("grid mismatch"), SnapshotError);
    fs::remove(dir / "snap_000004.nsef");
    write_snapshot(dir / "snap_000004.nsef", single_mode(Grid(8)), 0.4, 0.7);
    CHECK_THROWS_WITH_AS(load_trajectory(dir), doctest::Contains("viscosity mismatch"), SnapshotError);
}
