#include "nselab/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nselab {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.contains(key)) throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
}

template <class T>
void read(const json& obj, const char* key, const std::string& where, T& out)
{
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("invalid value for '" + where + "." + key + "'");
    }
}

Exponent exponent_at(const json& v, const std::string& where)
{
    try {
        if (v.is_string()) return Exponent::parse(v.get<std::string>());
        if (v.is_number_integer()) return Exponent(v.get<long long>());
    } catch (const std::exception& e) {
        throw ConfigError("invalid exponent at '" + where + "': " + e.what());
    }
    throw ConfigError("exponent at '" + where + "' must be a fraction string or \"inf\"");
}

json triple_json(const ledger::NormTriple& t)
{
    return {{"r", t.r.str()}, {"q", t.q.str()}, {"k", t.derivative_order}};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(doc, "", {"solver", "ledger", "output"});
    ExperimentConfig cfg;

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        reject_unknown(s, "solver",
                       {"n", "dt", "t_end", "viscosity", "mode", "snapshot_stride", "initial", "transport_dir"});
        read(s, "n", "solver", cfg.solver.n);
        read(s, "dt", "solver", cfg.solver.dt);
        read(s, "t_end", "solver", cfg.solver.t_end);
        read(s, "viscosity", "solver", cfg.solver.viscosity);
        read(s, "snapshot_stride", "solver", cfg.solver.snapshot_stride);
        read(s, "transport_dir", "solver", cfg.transport_dir);
        std::string mode = to_string(cfg.solver.mode);
        read(s, "mode", "solver", mode);
        try {
            cfg.solver.mode = parse_solver_mode(mode);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("solver.mode: ") + e.what());
        }
        if (s.contains("initial")) {
            const auto& ic = s["initial"];
            reject_unknown(ic, "solver.initial", {"kind", "amplitude", "sigma", "seed", "path"});
            read(ic, "kind", "solver.initial", cfg.solver.initial.kind);
            read(ic, "amplitude", "solver.initial", cfg.solver.initial.amplitude);
            read(ic, "sigma", "solver.initial", cfg.solver.initial.sigma);
            read(ic, "seed", "solver.initial", cfg.solver.initial.seed);
            read(ic, "path", "solver.initial", cfg.solver.initial.path);
        }
    }
    if (doc.contains("ledger")) {
        const auto& l = doc["ledger"];
        reject_unknown(l, "ledger", {"norms", "mollify", "oseen_probe"});
        if (l.contains("norms")) {
            if (!l["norms"].is_array()) throw ConfigError("'ledger.norms' must be an array");
            cfg.ledger.norms.clear();
            for (std::size_t i = 0; i < l["norms"].size(); ++i) {
                const auto& t = l["norms"][i];
                const std::string where = "ledger.norms[" + std::to_string(i) + "]";
                reject_unknown(t, where, {"r", "q", "k"});
                if (!t.contains("r") || !t.contains("q")) throw ConfigError("'" + where + "' needs r and q");
                int k = 0;
                read(t, "k", where, k);
                if (k != 0 && k != 1) throw ConfigError("'" + where + ".k' must be 0 or 1");
                cfg.ledger.norms.push_back({exponent_at(t["r"], where + ".r"), exponent_at(t["q"], where + ".q"), k});
            }
        }
        read(l, "mollify", "ledger", cfg.ledger.mollify_eps);
        if (l.contains("oseen_probe")) {
            const auto& p = l["oseen_probe"];
            reject_unknown(p, "ledger.oseen_probe", {"r", "s", "smooth_eps", "refine"});
            if (!p.contains("r") || !p.contains("s")) throw ConfigError("'ledger.oseen_probe' needs r and s");
            ProbeSettings ps{exponent_at(p["r"], "ledger.oseen_probe.r"), exponent_at(p["s"], "ledger.oseen_probe.s")};
            read(p, "smooth_eps", "ledger.oseen_probe", ps.smooth_eps);
            read(p, "refine", "ledger.oseen_probe", ps.refine);
            cfg.ledger.oseen_probe = ps;
        }
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        reject_unknown(o, "output", {"directory", "formats"});
        read(o, "directory", "output", cfg.output.directory);
        read(o, "formats", "output", cfg.output.formats);
        for (const auto& f : cfg.output.formats)
            if (f != "csv" && f != "json") throw ConfigError("unknown output format '" + f + "' in 'output.formats'");
    }
    try {
        cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solver: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_json(const ExperimentConfig& c)
{
    json norms = json::array();
    for (const auto& t : c.ledger.norms) norms.push_back(triple_json(t));
    json ledger = {{"norms", norms}, {"mollify", c.ledger.mollify_eps}};
    if (c.ledger.oseen_probe) {
        const auto& p = *c.ledger.oseen_probe;
        ledger["oseen_probe"] = {{"r", p.r.str()}, {"s", p.s.str()}, {"smooth_eps", p.smooth_eps}, {"refine", p.refine}};
    }
    const auto& s = c.solver;
    const json doc = {
        {"solver",
         {{"n", s.n},
          {"dt", s.dt},
          {"t_end", s.t_end},
          {"viscosity", s.viscosity},
          {"mode", to_string(s.mode)},
          {"snapshot_stride", s.snapshot_stride},
          {"transport_dir", c.transport_dir},
          {"initial",
           {{"kind", s.initial.kind},
            {"amplitude", s.initial.amplitude},
            {"sigma", s.initial.sigma},
            {"seed", s.initial.seed},
            {"path", s.initial.path}}}}},
        {"ledger", ledger},
        {"output", {{"directory", c.output.directory}, {"formats", c.output.formats}}}};
    return doc.dump();
}

std::string config_hash(const ExperimentConfig& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_json(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nselab
