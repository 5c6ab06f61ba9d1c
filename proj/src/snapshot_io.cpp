#include "nselab/snapshot_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace nselab {

namespace {

constexpr std::array<char, 4> kMagic = {'N', 'S', 'E', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "NSEF I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in, const std::filesystem::path& path)
{
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw SnapshotError("truncated snapshot: " + path.string());
    return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const FourierField& field, double time, double viscosity)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open for writing: " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid.n()));
    put<double>(out, time);
    put<double>(out, viscosity);
    const RealField r = to_real(field);
    for (const auto& c : r.comp)
        out.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
    if (!out) throw SnapshotError("write failed: " + path.string());
}

SnapshotFile read_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot: " + path.string());
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw SnapshotError("bad magic bytes (not an NSEF file): " + path.string());
    const auto version = get<std::uint32_t>(in, path);
    if (version != kVersion) throw SnapshotError("unsupported NSEF version " + std::to_string(version) + ": " + path.string());
    const auto n = get<std::uint32_t>(in, path);
    if (n < 8 || n % 2 != 0 || n > 4096) throw SnapshotError("invalid grid size in " + path.string());
    const Grid g(static_cast<int>(n));
    SnapshotFile s{get<double>(in, path), get<double>(in, path), FourierField(g)};
    RealField r(g);
    for (auto& c : r.comp)
        if (!in.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double))))
            throw SnapshotError("truncated snapshot: " + path.string());
    s.field = to_fourier(r);
    return s;
}

std::filesystem::path snapshot_name(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.nsef", index);
    return buf;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SnapshotError("cannot create directory " + dir.string() + ": " + ec.message());
    for (std::size_t i = 0; i < traj.size(); ++i)
        write_snapshot(dir / snapshot_name(i), traj[i].field, traj[i].time, traj.viscosity());
}

Trajectory load_trajectory(const std::filesystem::path& dir, SolverMode mode)
{
    if (!std::filesystem::is_directory(dir)) throw SnapshotError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".nsef") files.push_back(e.path());
    if (files.empty()) throw SnapshotError("no snapshots in " + dir.string());
    std::sort(files.begin(), files.end());

    auto first = read_snapshot(files.front());
    Trajectory traj(first.field.grid, first.viscosity, mode);
    traj.push_back(first.time, std::move(first.field));
    for (std::size_t i = 1; i < files.size(); ++i) {
        auto s = read_snapshot(files[i]);
        if (!(s.field.grid == traj.grid())) throw SnapshotError("grid mismatch in " + files[i].string());
        if (s.viscosity != traj.viscosity()) throw SnapshotError("viscosity mismatch in " + files[i].string());
        try {
            traj.push_back(s.time, std::move(s.field));
        } catch (const std::invalid_argument& e) {
            throw SnapshotError(std::string(e.what()) + ": " + files[i].string());
        }
    }
    return traj;
}

}  // namespace nselab
