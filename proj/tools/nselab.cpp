// nselab: exponent queries, simulations and energy-ledger analysis.

#include "nselab/exponent_calculus.hpp"
#include "nselab/parallel.hpp"
#include "nselab/pipeline.hpp"
#include "nselab/snapshot_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace nselab;
namespace ex = nselab::exponents;

namespace {

std::string space_str(const ex::MixedNormSpace& s)
{
    const std::string q = s.space_exp.str();
    return "L^{" + s.time_exp.str() + "}(" + (s.derivative_order ? "W^{1," + q + "}" : "L^{" + q + "}") + ")";
}

void print_check(const char* name, const ex::CriterionCheck& c)
{
    std::cout << name << ": ";
    if (!c.applicable) {
        std::cout << "not applicable\n";
        return;
    }
    std::cout << (c.satisfied ? "satisfied" : "not satisfied") << " weight=" << to_string(c.weight)
              << " threshold=" << to_string(c.threshold) << " margin=" << to_string(c.margin) << '\n';
}

void print_verdict(const ex::CriterionVerdict& v)
{
    std::cout << "space: " << space_str(v.space) << '\n';
    if (v.embedded_velocity) {
        std::cout << "embedded velocity: " << space_str(*v.embedded_velocity);
        if (v.embedding_finite_only) std::cout << " (every finite exponent, not inf)";
        std::cout << '\n';
    }
    print_check("serrin", v.serrin);
    print_check("shinbrot", v.shinbrot);
    print_check("leray-hopf interpolation", v.leray_hopf_interpolation);
    print_check("leslie-shvydkoy", v.leslie_shvydkoy);
    if (v.space.derivative_order == 1) {
        print_check("gradient regularity", v.gradient_regularity);
        std::cout << "gradient case: " << ex::to_string(v.gradient_case) << '\n';
        print_check("gradient ranges", v.gradient_ranges);
    }
}

std::vector<double> parse_eps_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size() || !(v > 0.0)) throw std::invalid_argument("bad mollifier width '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void add_exponent_commands(CLI::App& app)
{
    auto* ex_cmd = app.add_subcommand("exponents", "Exact exponent arithmetic");
    ex_cmd->require_subcommand(1);

    {
        auto* c = ex_cmd->add_subcommand("classify", "Criteria satisfied by a mixed-norm space");
        auto grad = std::make_shared<std::vector<std::string>>();
        auto vel = std::make_shared<std::vector<std::string>>();
        auto* g = c->add_option("--grad", *grad, "grad u in L^p(L^q): p q")->expected(2);
        auto* v = c->add_option("--vel", *vel, "u in L^r(L^s): r s")->expected(2);
        g->excludes(v);
        c->callback([grad, vel] {
            if (grad->empty() && vel->empty()) throw CLI::ValidationError("classify", "give --grad p q or --vel r s");
            const auto space = grad->empty()
                                   ? ex::MixedNormSpace::velocity(Exponent::parse((*vel)[0]), Exponent::parse((*vel)[1]))
                                   : ex::MixedNormSpace::gradient(Exponent::parse((*grad)[0]), Exponent::parse((*grad)[1]));
            print_verdict(ex::classify(space));
        });
    }
    {
        auto* c = ex_cmd->add_subcommand("theta", "Interpolation parameter of a proof case: i, ii1, ii2, iii");
        auto args = std::make_shared<std::pair<std::string, std::string>>();
        c->add_option("case", args->first)->required();
        c->add_option("q", args->second)->required();
        c->callback([args] {
            std::cout << "theta=" << to_string(ex::proof_case_theta(ex::parse_proof_case(args->first),
                                                                     Exponent::parse(args->second)))
                      << '\n';
        });
    }
    {
        auto* c = ex_cmd->add_subcommand("bootstrap", "Forcing/gradient exponent trace for transport in L^r(L^s)");
        auto args = std::make_shared<std::pair<std::string, std::string>>();
        auto steps = std::make_shared<int>(ex::kDefaultBootstrapSteps);
        c->add_option("r", args->first)->required();
        c->add_option("s", args->second)->required();
        c->add_option("--max-steps", *steps);
        c->callback([args, steps] {
            const auto t = ex::bootstrap_trace(Exponent::parse(args->first), Exponent::parse(args->second), *steps);
            std::cout << "n,alpha,beta,grad_time,grad_space\n";
            for (std::size_t i = 0; i < t.forcing_seq.size(); ++i) {
                std::cout << i + 1 << ',' << t.forcing_seq[i].time.str() << ',' << t.forcing_seq[i].space.str();
                if (i + 1 < t.gradient_seq.size())
                    std::cout << ',' << t.gradient_seq[i + 1].time.str() << ',' << t.gradient_seq[i + 1].space.str();
                else
                    std::cout << ",,";
                std::cout << '\n';
            }
            std::cout << "# stop: " << ex::to_string(t.stop_reason) << '\n';
        });
    }
    {
        auto* c = ex_cmd->add_subcommand("endgame", "Stopping index, blend and target space for the Shinbrot bootstrap");
        auto s = std::make_shared<std::string>();
        c->add_option("s", *s)->required();
        c->callback([s] {
            const auto e = ex::shinbrot_endgame(Exponent::parse(*s));
            std::cout << "N=" << e.steps << " target L^{" << e.target.time_exp.str() << "}L^{"
                      << e.target.space_exp.str() << "}\n";
            std::cout << "theta=" << to_string(e.theta) << (e.even_arrival ? " (even s: exact arrival)" : "") << '\n';
            std::cout << "lower=(" << e.lower.time.str() << ", " << e.lower.space.str() << ") upper=("
                      << e.upper.time.str() << ", " << e.upper.space.str() << ")\n";
        });
    }
    {
        auto* c = ex_cmd->add_subcommand("region", "Gradient-criteria region dataset over the (1/q, 1/p) square");
        auto grid = std::make_shared<int>(200);
        auto out = std::make_shared<std::string>();
        c->add_option("--grid", *grid, "points per axis")->check(CLI::PositiveNumber);
        c->add_option("--out", *out, "CSV file (stdout if omitted)");
        c->callback([grid, out] {
            const auto rows = ex::region_diagram(*grid);
            if (out->empty()) {
                ex::write_region_csv(std::cout, rows);
                return;
            }
            std::ofstream f(*out);
            if (!f) throw SnapshotError("cannot write " + *out);
            ex::write_region_csv(f, rows);
            std::cout << rows.size() << " rows written to " << *out << '\n';
        });
    }
    auto unary = [ex_cmd](const char* name, const char* help, std::function<std::string(const Exponent&)> fn) {
        auto* c = ex_cmd->add_subcommand(name, help);
        auto q = std::make_shared<std::string>();
        c->add_option("q", *q)->required();
        c->callback([q, fn] { std::cout << fn(Exponent::parse(*q)) << '\n'; });
    };
    unary("conjugate", "Hoelder conjugate", [](const Exponent& q) { return ex::holder_conjugate(q).str(); });
    unary("sobolev", "Sobolev exponent 3q/(3-q)", [](const Exponent& q) {
        const auto e = ex::sobolev_exponent(q);
        return e.value.str() + (e.finite_exponents_only ? " (every finite exponent, not inf)" : "");
    });
    unary("star", "Star exponent 1/p* = 1/p - 1/2", [](const Exponent& p) { return ex::star_exponent(p).str(); });
    unary("time-exponent", "Minimal time exponent of the gradient-ranges criterion", [](const Exponent& q) {
        return ex::gradient_ranges_time_exponent(q).str() + " (case " + ex::to_string(ex::gradient_case(q)) + ")";
    });
    {
        auto* c = ex_cmd->add_subcommand("scaling", "Scaling weight of L^r(L^s)");
        auto args = std::make_shared<std::array<std::string, 3>>();
        (*args)[2] = "velocity";
        c->add_option("r", (*args)[0])->required();
        c->add_option("s", (*args)[1])->required();
        c->add_option("--kind", (*args)[2], "velocity | gradient | shinbrot")
            ->check(CLI::IsMember({"velocity", "gradient", "shinbrot"}));
        c->callback([args] {
            const Exponent r = Exponent::parse((*args)[0]), s = Exponent::parse((*args)[1]);
            const auto& k = (*args)[2];
            const auto kind = k == "velocity"   ? ex::ScalingKind::ParabolicVelocity
                              : k == "gradient" ? ex::ScalingKind::ParabolicGradient
                                                : ex::ScalingKind::Shinbrot;
            const auto space = k == "gradient" ? ex::MixedNormSpace::gradient(r, s) : ex::MixedNormSpace::velocity(r, s);
            std::cout << to_string(ex::scaling_weight(space, kind)) << '\n';
        });
    }
    {
        auto* c = ex_cmd->add_subcommand("general-scaling", "Exponent of lambda under u -> lambda^a u(lambda^{a+1} t, lambda x)");
        auto args = std::make_shared<std::array<std::string, 3>>();
        c->add_option("r", (*args)[0])->required();
        c->add_option("s", (*args)[1])->required();
        c->add_option("alpha", (*args)[2])->required();
        c->callback([args] {
            std::cout << to_string(ex::general_scaling_exponent(Exponent::parse((*args)[0]), Exponent::parse((*args)[1]),
                                                                parse_rational((*args)[2])))
                      << '\n';
        });
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Navier-Stokes energy-equality laboratory"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);

    add_exponent_commands(app);

    auto* sim = app.add_subcommand("simulate", "Run the solver described by a config file");
    std::string sim_config;
    std::optional<std::uint64_t> seed;
    std::string sim_out;
    sim->add_option("config", sim_config, "JSON config")->required();
    sim->add_option("--seed", seed, "override solver.initial.seed");
    sim->add_option("--out", sim_out, "override output.directory");
    sim->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* led = app.add_subcommand("ledger", "Energy-ledger report for a snapshot directory");
    std::string led_dir, led_config, led_mollify, led_out;
    std::vector<std::string> probe;
    double probe_smooth = 0.0;
    bool no_refine = false;
    led->add_option("dir", led_dir, "snapshot directory")->required();
    led->add_option("--config", led_config, "JSON config (ledger and output sections are used)");
    led->add_option("--mollify", led_mollify, "comma-separated mollifier widths for the flux split");
    led->add_option("--oseen-probe", probe, "declared transport class r s")->expected(2);
    led->add_option("--probe-smooth", probe_smooth, "space-time smoothing width applied to the transport");
    led->add_flag("--no-refine", no_refine, "skip the doubled-grid probe run");
    led->add_option("--out", led_out, "report directory (defaults to the snapshot directory)");
    led->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        // Errors thrown from exponent callbacks.
        std::cerr << "error: " << e.what() << '\n';
        return dynamic_cast<const NumericalFailure*>(&e) ? 1 : 2;
    }

    try {
        set_thread_count(threads);
        if (*sim) {
            ExperimentConfig cfg = load_config(sim_config);
            if (seed) cfg.solver.initial.seed = *seed;
            const std::string out = sim_out.empty() ? cfg.output.directory : sim_out;
            const auto res = run_simulation(cfg, out);
            std::cout << "steps=" << res.steps << " snapshots=" << res.trajectory.size() << " hash=" << res.config_hash;
            if (res.energy_drift) std::cout << " energy_drift=" << *res.energy_drift;
            std::cout << " dir=" << out << '\n';
        } else if (*led) {
            LedgerSettings settings;
            std::vector<std::string> formats = {"csv", "json"};
            if (!led_config.empty()) {
                const auto cfg = load_config(led_config);
                settings = cfg.ledger;
                formats = cfg.output.formats;
            }
            if (!led_mollify.empty()) settings.mollify_eps = parse_eps_list(led_mollify);
            if (!probe.empty()) settings.oseen_probe = ProbeSettings{Exponent::parse(probe[0]), Exponent::parse(probe[1])};
            if (settings.oseen_probe) {
                if (probe_smooth > 0.0) settings.oseen_probe->smooth_eps = probe_smooth;
                if (no_refine) settings.oseen_probe->refine = false;
            }
            const std::string out = led_out.empty() ? led_dir : led_out;
            const auto rep = run_ledger(led_dir, settings, out, formats);
            std::cout << "E0=" << rep.initial_energy << " max|residual|=" << rep.max_abs_residual
                      << " flux=" << rep.flux_integral << '\n';
            for (const auto& n : rep.norms)
                std::cout << (n.triple.derivative_order ? "grad u" : "u") << " in L^" << n.triple.r.str() << "(L^"
                          << n.triple.q.str() << "): " << n.value << '\n';
            if (rep.probe) {
                std::cout << "oseen probe (r,s)=(" << rep.probe->r.str() << "," << rep.probe->s.str() << ")\n"
                          << "alpha,beta,closed_form,transport_norm,pressure_norm,refined_transport,refined_pressure,stable\n";
                for (const auto& r : rep.probe->rows)
                    std::cout << r.pair.time.str() << ',' << r.pair.space.str() << ','
                              << (r.matches_closed_form ? "match" : "MISMATCH") << ',' << r.transport_norm << ','
                              << r.pressure_norm << ',' << r.transport_norm_refined << ',' << r.pressure_norm_refined
                              << ',' << (!rep.probe->refined ? "n/a" : r.refinement_stable ? "yes" : "no") << '\n';
                for (const auto& w : rep.probe->warnings) std::cerr << "warning: " << w << '\n';
            }
        }
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SnapshotError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
