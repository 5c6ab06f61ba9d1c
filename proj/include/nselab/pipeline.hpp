#pragma once

#include "nselab/config.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace nselab {

struct SimulationResult {
    Trajectory trajectory;
    std::size_t steps = 0;
    std::string config_hash;
    double wall_time_s = 0.0;
    std::optional<double> energy_drift;
};

/// Largest relative deviation of the kinetic energy from its exact law
/// (e^{-4 nu t} for the two-dimensional Taylor-Green cell, e^{-2 nu t} for the
/// single mode). nullopt for initial data without a closed-form energy.
std::optional<double> analytic_energy_drift(const Trajectory& traj, const SolverConfig& config);

/// Solves, writes snap_*.nsef and manifest.json into out_dir.
SimulationResult run_simulation(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Loads the trajectory in traj_dir (mode from manifest.json when present),
/// builds the criterion report with the requested extras and writes
/// report.csv / report.json into out_dir.
ledger::LedgerReport run_ledger(const std::filesystem::path& traj_dir, const LedgerSettings& settings,
                                const std::filesystem::path& out_dir,
                                const std::vector<std::string>& formats = {"csv", "json"});

}  // namespace nselab
