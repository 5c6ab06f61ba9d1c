#pragma once

#include "nselab/trajectory.hpp"

#include <filesystem>
#include <string>

namespace nselab {

/// Raised for unreadable, truncated or malformed snapshot files and directories.
class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SnapshotFile {
    double time = 0.0;
    double viscosity = 0.0;
    FourierField field;
};

/// NSEF layout: "NSEF", u32 version (1), u32 n, f64 time, f64 viscosity, then
/// the three components as little-endian f64 real samples, x fastest.
void write_snapshot(const std::filesystem::path& path, const FourierField& field, double time, double viscosity);
SnapshotFile read_snapshot(const std::filesystem::path& path);

/// Snapshot i is stored as snap_XXXXXX.nsef.
std::filesystem::path snapshot_name(std::size_t index);

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
/// Loads every *.nsef file in name order. Throws SnapshotError for an empty
/// directory, a bad magic number or mismatched grids and viscosities.
Trajectory load_trajectory(const std::filesystem::path& dir, SolverMode mode = SolverMode::NavierStokes);

}  // namespace nselab
