#pragma once

#include "nselab/spectral_field.hpp"

#include <string>
#include <vector>

namespace nselab {

enum class SolverMode { NavierStokes, Stokes, Oseen };
std::string to_string(SolverMode m);
SolverMode parse_solver_mode(std::string_view text);

struct Snapshot {
    double time = 0.0;
    FourierField field;
};

/// Time-ordered snapshots with a uniform step.
class Trajectory {
public:
    Trajectory(Grid grid, double viscosity, SolverMode mode = SolverMode::NavierStokes, std::string provenance = {});

    /// Appends a snapshot; times must increase with a uniform step (to 1e-12 relative).
    void push_back(double time, FourierField field);

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] double viscosity() const { return viscosity_; }
    [[nodiscard]] SolverMode mode() const { return mode_; }
    [[nodiscard]] const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    [[nodiscard]] std::size_t size() const { return snapshots_.size(); }
    [[nodiscard]] bool empty() const { return snapshots_.empty(); }
    [[nodiscard]] const Snapshot& operator[](std::size_t i) const { return snapshots_[i]; }
    [[nodiscard]] const Snapshot& front() const { return snapshots_.front(); }
    [[nodiscard]] const Snapshot& back() const { return snapshots_.back(); }
    [[nodiscard]] auto begin() const { return snapshots_.begin(); }
    [[nodiscard]] auto end() const { return snapshots_.end(); }

    /// Snapshot spacing; 0 for fewer than two snapshots.
    [[nodiscard]] double dt() const;
    [[nodiscard]] double start_time() const { return snapshots_.front().time; }
    [[nodiscard]] double end_time() const { return snapshots_.back().time; }

    /// Index of the snapshot at time t; throws std::invalid_argument if t is not on the grid.
    [[nodiscard]] std::size_t index_of(double t) const;
    /// Linear interpolation between neighbouring snapshots; clamps nothing, throws outside the time span.
    [[nodiscard]] FourierField interpolate(double t) const;

private:
    Grid grid_;
    double viscosity_;
    SolverMode mode_;
    std::string provenance_;
    std::vector<Snapshot> snapshots_;
};

}  // namespace nselab
