#include "nselab/pipeline.hpp"

#include "nselab/snapshot_io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>

namespace nselab {

namespace {
constexpr std::size_t kProbeSnapshots = 51;
}

std::optional<double> analytic_energy_drift(const Trajectory& traj, const SolverConfig& config)
{
    double rate = 0.0;
    if (config.initial.kind == "taylor-green")
        rate = 4.0;
    else if (config.initial.kind == "single-mode")
        rate = 2.0;
    else
        return std::nullopt;
    if (config.mode == SolverMode::Oseen && !traj.empty()) return std::nullopt;
    const double E0 = ledger::kinetic_energy(traj.front().field);
    if (E0 == 0.0) return 0.0;
    double drift = 0.0;
    for (const auto& s : traj) {
        const double exact = E0 * std::exp(-rate * traj.viscosity() * s.time);
        drift = std::max(drift, std::abs(ledger::kinetic_energy(s.field) / exact - 1.0));
    }
    return drift;
}

SimulationResult run_simulation(const ExperimentConfig& config, const std::filesystem::path& out_dir)
{
    SolverConfig sc = config.solver;
    SimulationResult res{Trajectory(Grid(sc.n), sc.viscosity), 0, {}, 0.0, std::nullopt};
    res.config_hash = config_hash(config);
    sc.provenance = "config " + res.config_hash + " seed " + std::to_string(sc.initial.seed);

    std::optional<Trajectory> transport;
    if (!config.transport_dir.empty()) transport = load_trajectory(config.transport_dir);

    const auto start = std::chrono::steady_clock::now();
    res.trajectory = solve(sc, transport ? &*transport : nullptr);
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.steps = sc.step_count();
    res.energy_drift = analytic_energy_drift(res.trajectory, sc);

    write_trajectory(out_dir, res.trajectory);
    nlohmann::ordered_json m;
    m["config_hash"] = res.config_hash;
    m["provenance"] = res.trajectory.provenance();
    m["mode"] = to_string(sc.mode);
    m["n"] = sc.n;
    m["dt"] = sc.dt;
    m["t_end"] = sc.t_end;
    m["viscosity"] = sc.viscosity;
    m["steps"] = res.steps;
    m["snapshots"] = res.trajectory.size();
    m["energy_drift"] = res.energy_drift ? nlohmann::ordered_json(*res.energy_drift) : nlohmann::ordered_json(nullptr);
    m["wall_time_s"] = res.wall_time_s;
    const auto path = out_dir / "manifest.json";
    std::ofstream out(path);
    if (!out) throw SnapshotError("cannot write " + path.string());
    out << m.dump(2) << '\n';
    if (!out) throw SnapshotError("write failed: " + path.string());
    return res;
}

ledger::LedgerReport run_ledger(const std::filesystem::path& traj_dir, const LedgerSettings& settings,
                                const std::filesystem::path& out_dir, const std::vector<std::string>& formats)
{
    SolverMode mode = SolverMode::NavierStokes;
    if (std::ifstream mf(traj_dir / "manifest.json"); mf) {
        try {
            const auto m = nlohmann::json::parse(mf);
            if (m.contains("mode")) mode = parse_solver_mode(m["mode"].get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw SnapshotError("corrupt manifest in " + traj_dir.string() + ": " + e.what());
        }
    }
    const Trajectory traj = load_trajectory(traj_dir, mode);
    auto report = ledger::criterion_report(traj, settings.norms);
    for (double eps : settings.mollify_eps) report.flux_splits.push_back(ledger::mollified_flux(traj, eps));
    if (settings.oseen_probe) {
        const auto& p = *settings.oseen_probe;
        // The probe solves on a doubled grid; a coarse transport time grid keeps memory bounded.
        Trajectory transport = ledger::subsample(traj, kProbeSnapshots);
        if (p.smooth_eps > 0.0) transport = spacetime_smooth(transport, p.smooth_eps);
        report.probe = ledger::oseen_regularity_probe(transport, p.r, p.s, 8, p.refine);
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw SnapshotError("cannot create directory " + out_dir.string() + ": " + ec.message());
    for (const auto& f : formats) {
        const auto path = out_dir / (f == "csv" ? "report.csv" : "report.json");
        std::ofstream out(path);
        if (!out) throw SnapshotError("cannot write " + path.string());
        if (f == "csv")
            ledger::write_csv(out, report);
        else
            ledger::write_json(out, report);
    }
    return report;
}

}  // namespace nselab
