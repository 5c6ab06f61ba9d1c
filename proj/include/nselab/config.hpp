#pragma once

#include "nselab/energy_ledger.hpp"
#include "nselab/nse_solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nselab {

/// Invalid experiment configuration; what() names the offending key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ProbeSettings {
    Exponent r;
    Exponent s;
    /// Width of the space-time smoothing applied to the trajectory before it is used as transport (0 = none).
    double smooth_eps = 0.0;
    bool refine = true;
};

struct LedgerSettings {
    std::vector<ledger::NormTriple> norms = ledger::default_norm_triples();
    std::vector<double> mollify_eps;
    std::optional<ProbeSettings> oseen_probe;
};

struct OutputSettings {
    std::string directory = "run";
    std::vector<std::string> formats = {"csv", "json"};
};

/// JSON document with sections "solver", "ledger" and "output". Unknown keys are rejected.
struct ExperimentConfig {
    SolverConfig solver;
    /// Oseen-mode transport: a directory of snapshots (empty means zero transport).
    std::string transport_dir;
    LedgerSettings ledger;
    OutputSettings output;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of the effective configuration (sorted keys, fixed formatting).
std::string canonical_json(const ExperimentConfig& config);
/// 64-bit FNV-1a of canonical_json, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace nselab
