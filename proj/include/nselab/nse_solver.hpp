#pragma once

#include "nselab/trajectory.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nselab {

/// Numerical breakdown during a solve (NaN, CFL). Carries the offending step.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, std::size_t step)
        : std::runtime_error(what + " at step " + std::to_string(step)), step_(step)
    {
    }
    [[nodiscard]] std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

class CflViolation : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

struct InitialCondition {
    /// "zero", "taylor-green", "taylor-green-3d", "single-mode", "rough" or "file".
    std::string kind = "taylor-green";
    double amplitude = 1.0;
    double sigma = 1.2;
    std::uint64_t seed = 0;
    std::string path;
};

struct SolverConfig {
    int n = 32;
    double dt = 1e-3;
    double t_end = 0.5;
    double viscosity = 1.0;
    InitialCondition initial;
    int snapshot_stride = 1;
    SolverMode mode = SolverMode::NavierStokes;
    std::string provenance;

    /// Number of steps; throws std::invalid_argument unless t_end is a whole
    /// multiple of dt and of dt * snapshot_stride.
    [[nodiscard]] std::size_t step_count() const;
    /// Throws std::invalid_argument on any invalid field.
    void validate() const;
};

/// The velocity field named by the initial-condition spec, on an n^3 grid.
FourierField initial_field(const SolverConfig& config);

/// Largest stable step 0.5 dx / max|u| for the advecting field (infinity for zero).
double cfl_limit(const FourierField& advecting);

/// One integrating-factor RK4 step with fields held constant over the step.
/// The viscous part is exact; the transport in oseen mode and the forcing are
/// optional. Throws CflViolation if dt exceeds the CFL limit of the advecting field.
FourierField step(const FourierField& u, double dt, double viscosity, SolverMode mode,
                  const FourierField* transport = nullptr, const FourierField* forcing = nullptr);

/// Integrates from t = 0 to t_end. In oseen mode the transport trajectory is
/// linearly interpolated at substep times (absent means zero); the forcing
/// likewise in every mode. Throws NumericalFailure on NaN or CFL breakdown.
Trajectory solve(const SolverConfig& config, const Trajectory* transport = nullptr,
                 const Trajectory* forcing = nullptr);
/// Same with an explicit initial field instead of config.initial.
Trajectory solve_from(const SolverConfig& config, FourierField u0, const Trajectory* transport = nullptr,
                      const Trajectory* forcing = nullptr);

/// Adjoint Oseen problem with zero final data at T = t_end: integrates forward in
/// reversed time with transport -U(T - t) and forcing -f(T - t), then reverses.
Trajectory solve_final_value(const SolverConfig& config, const Trajectory& transport, const Trajectory& forcing);

/// Snapshot order reversed, t -> T - t. Times are reused from the original grid,
/// so reversing twice returns the input bit for bit.
Trajectory reverse(const Trajectory& traj);

/// Spectral low-pass |k| <= 1/eps composed with time mollification of width eps.
/// Throws std::invalid_argument if eps is below the grid's spatial or temporal resolution.
Trajectory spacetime_smooth(const Trajectory& traj, double eps);

/// Applies a field map to every snapshot. The output grid is that of the mapped fields.
template <class Fn>
Trajectory map_fields(const Trajectory& traj, Fn&& fn)
{
    if (traj.empty()) return Trajectory(traj.grid(), traj.viscosity(), traj.mode(), traj.provenance());
    FourierField first = fn(traj.front().field);
    Trajectory out(first.grid, traj.viscosity(), traj.mode(), traj.provenance());
    out.push_back(traj.front().time, std::move(first));
    for (std::size_t i = 1; i < traj.size(); ++i) out.push_back(traj[i].time, fn(traj[i].field));
    return out;
}

}  // namespace nselab
