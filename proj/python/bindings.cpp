#include "nselab/energy_ledger.hpp"
#include "nselab/exponent_calculus.hpp"
#include "nselab/parallel.hpp"
#include "nselab/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace nselab;
namespace ex = nselab::exponents;

namespace {

// Exponents cross the boundary as exact strings ("3/2", "inf"); the Python
// package converts them to and from fractions.Fraction.
Exponent exp_of(const std::string& s) { return Exponent::parse(s); }

py::tuple pair_of(const ex::TimeSpacePair& p) { return py::make_tuple(p.time.str(), p.space.str()); }

py::dict check_of(const ex::CriterionCheck& c)
{
    py::dict d;
    d["applicable"] = c.applicable;
    d["satisfied"] = c.satisfied;
    d["weight"] = to_string(c.weight);
    d["threshold"] = to_string(c.threshold);
    d["margin"] = to_string(c.margin);
    return d;
}

py::dict classify(const std::string& kind, const std::string& time, const std::string& space)
{
    ex::MixedNormSpace m;
    if (kind == "velocity")
        m = ex::MixedNormSpace::velocity(exp_of(time), exp_of(space));
    else if (kind == "gradient")
        m = ex::MixedNormSpace::gradient(exp_of(time), exp_of(space));
    else
        throw std::invalid_argument("kind must be 'velocity' or 'gradient', got '" + kind + "'");
    const auto v = ex::classify(m);
    py::dict d;
    d["serrin"] = check_of(v.serrin);
    d["shinbrot"] = check_of(v.shinbrot);
    d["leray_hopf_interpolation"] = check_of(v.leray_hopf_interpolation);
    d["leslie_shvydkoy"] = check_of(v.leslie_shvydkoy);
    d["gradient_regularity"] = check_of(v.gradient_regularity);
    d["gradient_ranges"] = check_of(v.gradient_ranges);
    d["gradient_case"] = ex::to_string(v.gradient_case);
    if (v.embedded_velocity)
        d["embedded_velocity"] = py::make_tuple(v.embedded_velocity->time_exp.str(), v.embedded_velocity->space_exp.str());
    else
        d["embedded_velocity"] = py::none();
    d["embedding_finite_only"] = v.embedding_finite_only;
    return d;
}

py::dict bootstrap(const std::string& r, const std::string& s, int max_steps)
{
    const auto t = ex::bootstrap_trace(exp_of(r), exp_of(s), max_steps);
    py::list grad, forcing;
    for (const auto& p : t.gradient_seq) grad.append(pair_of(p));
    for (const auto& p : t.forcing_seq) forcing.append(pair_of(p));
    py::dict d;
    d["gradient"] = grad;
    d["forcing"] = forcing;
    d["stop"] = ex::to_string(t.stop_reason);
    return d;
}

py::dict endgame(const std::string& s)
{
    const auto e = ex::shinbrot_endgame(exp_of(s));
    py::dict d;
    d["steps"] = e.steps;
    d["theta"] = to_string(e.theta);
    d["even_arrival"] = e.even_arrival;
    d["lower"] = pair_of(e.lower);
    d["upper"] = pair_of(e.upper);
    d["target"] = py::make_tuple(e.target.time_exp.str(), e.target.space_exp.str());
    return d;
}

std::string region_csv(int points_per_axis)
{
    std::ostringstream out;
    ex::write_region_csv(out, ex::region_diagram(points_per_axis));
    return out.str();
}

py::dict simulate(const std::string& config_json, const std::filesystem::path& out_dir)
{
    const auto cfg = parse_config(config_json);
    std::optional<SimulationResult> run;
    {
        py::gil_scoped_release release;
        run.emplace(run_simulation(cfg, out_dir));
    }
    const SimulationResult& res = *run;
    py::list times, energies;
    for (const auto& s : res.trajectory) {
        times.append(s.time);
        energies.append(ledger::kinetic_energy(s.field));
    }
    py::dict d;
    d["steps"] = res.steps;
    d["config_hash"] = res.config_hash;
    d["times"] = times;
    d["energy"] = energies;
    d["energy_drift"] = res.energy_drift ? py::cast(*res.energy_drift) : py::none();
    return d;
}

py::dict run_ledger_py(const std::filesystem::path& traj_dir, const std::string& config_json,
                       const std::filesystem::path& out_dir)
{
    const auto cfg = parse_config(config_json);
    ledger::LedgerReport rep;
    {
        py::gil_scoped_release release;
        rep = run_ledger(traj_dir, cfg.ledger, out_dir);
    }
    py::list residuals;
    for (const auto& row : rep.rows) residuals.append(row.residual);
    py::dict d;
    d["initial_energy"] = rep.initial_energy;
    d["max_abs_residual"] = rep.max_abs_residual;
    d["flux_integral"] = rep.flux_integral;
    d["residuals"] = residuals;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exponent calculus and periodic Navier-Stokes experiments";

    m.def("conjugate", [](const std::string& q) { return ex::holder_conjugate(exp_of(q)).str(); }, py::arg("q"));
    m.def(
        "sobolev",
        [](const std::string& q) {
            const auto e = ex::sobolev_exponent(exp_of(q));
            return py::make_tuple(e.value.str(), e.finite_exponents_only);
        },
        py::arg("q"));
    m.def("star", [](const std::string& p) { return ex::star_exponent(exp_of(p)).str(); }, py::arg("p"));
    m.def(
        "gradient_time_exponent",
        [](const std::string& q) { return ex::gradient_ranges_time_exponent(exp_of(q)).str(); }, py::arg("q"));
    m.def(
        "general_scaling",
        [](const std::string& r, const std::string& s, const std::string& alpha) {
            return to_string(ex::general_scaling_exponent(exp_of(r), exp_of(s), parse_rational(alpha)));
        },
        py::arg("r"), py::arg("s"), py::arg("alpha"));
    m.def(
        "proof_theta",
        [](const std::string& c, const std::string& q) {
            return to_string(ex::proof_case_theta(ex::parse_proof_case(c), exp_of(q)));
        },
        py::arg("case"), py::arg("q"));
    m.def("classify", &classify, py::arg("kind"), py::arg("time"), py::arg("space"));
    m.def("bootstrap", &bootstrap, py::arg("r"), py::arg("s"), py::arg("max_steps") = ex::kDefaultBootstrapSteps);
    m.def("endgame", &endgame, py::arg("s"));
    m.def("region_csv", &region_csv, py::arg("points_per_axis"));

    m.def("simulate", &simulate, py::arg("config_json"), py::arg("out_dir"));
    m.def("ledger", &run_ledger_py, py::arg("traj_dir"), py::arg("config_json"), py::arg("out_dir"));
    m.def("set_threads", &set_thread_count, py::arg("threads"));
}
