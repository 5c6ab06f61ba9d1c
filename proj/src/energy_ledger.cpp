#include "nselab/energy_ledger.hpp"

#include "nselab/nse_solver.hpp"
#include "nselab/time_mollifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nselab::ledger {

namespace {

double trapezoid_weight(std::size_t i, std::size_t last) { return (i == 0 || i == last) ? 0.5 : 1.0; }

/// Cumulative trapezoid integral of samples on a uniform grid.
std::vector<double> cumulative_trapezoid(const std::vector<double>& v, double dt)
{
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (v[i - 1] + v[i]);
    return out;
}

double snapshot_norm(const FourierField& f, const Exponent& q, int derivative_order)
{
    if (derivative_order == 0) return lq_norm(f, q);
    if (derivative_order == 1) return sobolev_seminorm(f, q);
    throw std::invalid_argument("derivative order must be 0 or 1");
}

double ratio(double a, double b)
{
    const double lo = std::min(std::abs(a), std::abs(b));
    const double hi = std::max(std::abs(a), std::abs(b));
    if (hi == 0.0) return 1.0;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

nlohmann::json check_json(const exponents::CriterionCheck& c)
{
    return {{"applicable", c.applicable},
            {"satisfied", c.satisfied},
            {"weight", to_string(c.weight)},
            {"threshold", to_string(c.threshold)},
            {"margin", to_string(c.margin)}};
}

nlohmann::json number(double v)
{
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

double kinetic_energy(const FourierField& u) { return 0.5 * inner_product(u, u); }

double enstrophy(const FourierField& u) { return gradient_inner_product(u, u); }

std::vector<double> balance_residuals(const Trajectory& traj)
{
    if (traj.empty()) return {};
    std::vector<double> Z, E;
    for (const auto& s : traj) {
        E.push_back(kinetic_energy(s.field));
        Z.push_back(enstrophy(s.field));
    }
    const auto D = cumulative_trapezoid(Z, traj.dt());
    std::vector<double> r(traj.size());
    r[0] = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) r[i] = E[i] + traj.viscosity() * D[i] - E[0];
    return r;
}

double balance_residual(const Trajectory& traj, double t)
{
    const std::size_t i = traj.index_of(t);
    if (i == 0) return 0.0;
    std::vector<double> Z;
    for (std::size_t j = 0; j <= i; ++j) Z.push_back(enstrophy(traj[j].field));
    const double D = cumulative_trapezoid(Z, traj.dt()).back();
    return kinetic_energy(traj[i].field) + traj.viscosity() * D - kinetic_energy(traj[0].field);
}

double flux_integral(const Trajectory& traj)
{
    if (traj.size() < 2) return 0.0;
    const std::size_t last = traj.size() - 1;
    double total = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
        const auto& u = traj[i].field;
        total += trapezoid_weight(i, last) * inner_product(nonlinear_term(u), u);
    }
    return total * traj.dt();
}

FluxSplit mollified_flux(const Trajectory& traj, double eps, std::optional<double> cutoff)
{
    const double m = cutoff.value_or(1.0 / eps);
    const auto ue = mollifier::mollify(traj, eps).trajectory;
    const auto ume = mollifier::mollify(map_fields(traj, [m](const FourierField& f) { return low_pass(f, m); }), eps)
                         .trajectory;
    FluxSplit out;
    out.eps = eps;
    out.cutoff = m;
    const std::size_t last = traj.size() - 1;
    const double dt = traj.dt();
    for (std::size_t i = 0; i <= last; ++i) {
        const auto& u = traj[i].field;
        const FourierField N = nonlinear_term(u);
        const double w = trapezoid_weight(i, last) * dt;
        const double a = inner_product(N, ume[i].field);
        const double b = inner_product(N, ue[i].field);
        const double c = inner_product(N, u);
        out.mollified += w * a;
        out.lowpass_term += w * (a - b);
        out.mollifier_term += w * (b - c);
        out.flux_term += w * c;
    }
    return out;
}

double hopf_identity_residual(const Trajectory& traj, double eps, double t0)
{
    if (traj.mode() == SolverMode::Oseen)
        throw std::invalid_argument("hopf identity needs the transport of an oseen trajectory; not supported");
    if (traj.size() < 2) throw std::invalid_argument("hopf identity needs at least two snapshots");
    if (!(eps < t0 - traj.start_time()) || !(t0 < traj.end_time() - eps))
        throw std::invalid_argument("hopf identity requires eps < t0 < T - eps");
    const std::size_t i0 = traj.index_of(t0);
    const std::size_t last = traj.size() - 1;
    const mollifier::DiscreteMollifier k(eps, traj.dt());
    const bool nonlinear = traj.mode() == SolverMode::NavierStokes;
    const double nu = traj.viscosity();

    double integral = 0.0;
    double lhs = 0.0;
    for (std::size_t i = 0; i <= i0; ++i) {
        const auto& u = traj[i].field;
        const FourierField phi = mollifier::mollify_at(traj, k, i, last);
        const FourierField dphi = mollifier::mollified_derivative_at(traj, k, i, last);
        double g = inner_product(u, dphi) - nu * gradient_inner_product(u, phi);
        if (nonlinear) g -= inner_product(nonlinear_term(u), phi);
        integral += trapezoid_weight(i, i0) * traj.dt() * g;
        if (i == 0) lhs -= inner_product(u, phi);
        if (i == i0) lhs += inner_product(u, phi);
    }
    return lhs - integral;
}

double mixed_norm(const Trajectory& traj, const Exponent& r, const Exponent& q, int derivative_order)
{
    if (traj.empty()) return 0.0;
    std::vector<double> v;
    v.reserve(traj.size());
    for (const auto& s : traj) v.push_back(snapshot_norm(s.field, q, derivative_order));
    if (r.is_infinite()) return *std::max_element(v.begin(), v.end());
    if (traj.size() < 2) return 0.0;
    const double rr = r.to_double();
    const std::size_t last = v.size() - 1;
    double total = 0.0;
    for (std::size_t i = 0; i <= last; ++i) total += trapezoid_weight(i, last) * std::pow(v[i], rr);
    return std::pow(total * traj.dt(), 1.0 / rr);
}

Trajectory probe_forcing(const Trajectory& like)
{
    if (like.size() < 2) throw std::invalid_argument("probe forcing needs at least two transport snapshots");
    const Grid g = like.grid();
    const FourierField shape = to_fourier(RealField::from_function(g, [](double x, double y, double z) {
        return std::array<double, 3>{std::sin(z), std::sin(x), std::sin(y)};
    }));
    const double T = like.end_time() - like.start_time();
    Trajectory out(g, like.viscosity(), SolverMode::Oseen, "probe forcing");
    for (const auto& s : like) {
        const double b = std::sin(std::numbers::pi * (s.time - like.start_time()) / T);
        out.push_back(s.time, (b * b) * shape);
    }
    return out;
}

namespace {

/// Per-snapshot L^beta norms of (U.grad)w and grad pi for each probed space exponent.
struct ProbeSamples {
    double dt = 0.0;
    std::vector<std::vector<double>> transport;  ///< [pair][snapshot]
    std::vector<std::vector<double>> pressure;
};

double time_norm(const std::vector<double>& v, const Exponent& r, double dt)
{
    if (v.empty()) return 0.0;
    if (r.is_infinite()) return *std::max_element(v.begin(), v.end());
    const double rr = r.to_double();
    const std::size_t last = v.size() - 1;
    double total = 0.0;
    for (std::size_t i = 0; i <= last; ++i) total += trapezoid_weight(i, last) * std::pow(v[i], rr);
    return std::pow(total * dt, 1.0 / rr);
}

ProbeSamples run_probe(const Trajectory& transport, const std::vector<exponents::TimeSpacePair>& pairs,
                       double solver_dt)
{
    SolverConfig cfg;
    const long m = std::max(1L, std::lround(transport.dt() / solver_dt));
    cfg.n = transport.grid().n();
    cfg.dt = transport.dt() / double(m);
    cfg.snapshot_stride = static_cast<int>(m);
    cfg.t_end = transport.end_time();
    cfg.viscosity = transport.viscosity();
    cfg.mode = SolverMode::Oseen;
    cfg.initial.kind = "zero";
    const Trajectory w = solve_final_value(cfg, transport, probe_forcing(transport));
    ProbeSamples out{w.dt(), std::vector<std::vector<double>>(pairs.size()),
                     std::vector<std::vector<double>>(pairs.size())};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const FourierField g = transport_term(transport[i].field, w[i].field);
        const RealField gr = to_real(g);
        const RealField pr = to_real(gradient_part(g));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            out.transport[p].push_back(lq_norm(gr, pairs[p].space));
            out.pressure[p].push_back(lq_norm(pr, pairs[p].space));
        }
    }
    return out;
}

}  // namespace

OseenProbe oseen_regularity_probe(const Trajectory& transport, const Exponent& r, const Exponent& s,
                                  std::size_t n_steps, bool refine, double solver_dt)
{
    if (transport.size() < 2) throw std::invalid_argument("oseen probe needs at least two transport snapshots");
    if (std::abs(transport.start_time()) > 1e-12) throw std::invalid_argument("transport must start at t = 0");
    if (!(solver_dt > 0.0)) throw std::invalid_argument("solver dt must be positive");

    OseenProbe probe;
    probe.r = r;
    probe.s = s;
    probe.base_n = transport.grid().n();
    probe.refined = refine;

    exponents::BootstrapTrace trace;
    try {
        trace = exponents::bootstrap_trace(r, s);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("declared transport class: ") + e.what());
    }
    const bool critical = r.reciprocal() + s.reciprocal() == Rational(1, 2) && !s.is_infinite();
    const std::vector<exponents::TimeSpacePair> pairs(
        trace.forcing_seq.begin(), trace.forcing_seq.begin() + std::min(n_steps, trace.forcing_seq.size()));

    const double u0 = mixed_norm(transport, r, s);
    if (!std::isfinite(u0))
        probe.warnings.push_back("transport norm in L^" + r.str() + "(L^" + s.str() + ") is not finite");
    const ProbeSamples base = run_probe(transport, pairs, solver_dt);
    std::optional<ProbeSamples> fine;
    if (refine) {
        const Grid g2(2 * probe.base_n);
        const Trajectory fine_transport = map_fields(transport, [&g2](const FourierField& f) { return resample(f, g2); });
        if (ratio(u0, mixed_norm(fine_transport, r, s)) > 2.0)
            probe.warnings.push_back("transport not refinement-stable in L^" + r.str() + "(L^" + s.str() + ")");
        fine = run_probe(fine_transport, pairs, solver_dt);
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        ProbeRow row;
        row.pair = pairs[i];
        if (critical)
            row.matches_closed_form =
                row.pair == exponents::shinbrot_forcing_closed_form(s.value(), static_cast<long>(i + 1));
        row.transport_norm = time_norm(base.transport[i], row.pair.time, base.dt);
        row.pressure_norm = time_norm(base.pressure[i], row.pair.time, base.dt);
        row.finite = std::isfinite(row.transport_norm) && std::isfinite(row.pressure_norm);
        if (fine) {
            row.transport_norm_refined = time_norm(fine->transport[i], row.pair.time, fine->dt);
            row.pressure_norm_refined = time_norm(fine->pressure[i], row.pair.time, fine->dt);
            row.finite = row.finite && std::isfinite(row.transport_norm_refined) &&
                         std::isfinite(row.pressure_norm_refined);
            row.refinement_stable = ratio(row.transport_norm, row.transport_norm_refined) <= 2.0 &&
                                    ratio(row.pressure_norm, row.pressure_norm_refined) <= 2.0;
        }
        probe.rows.push_back(row);
    }
    return probe;
}

Trajectory subsample(const Trajectory& traj, std::size_t max_snapshots)
{
    if (max_snapshots < 2) throw std::invalid_argument("subsample needs max_snapshots >= 2");
    if (traj.size() <= max_snapshots) return traj;
    const std::size_t intervals = traj.size() - 1;
    std::size_t k = (intervals + max_snapshots - 2) / (max_snapshots - 1);
    while (intervals % k != 0) ++k;
    Trajectory out(traj.grid(), traj.viscosity(), traj.mode(), traj.provenance());
    for (std::size_t i = 0; i <= intervals; i += k) out.push_back(traj[i].time, traj[i].field);
    return out;
}

std::vector<NormTriple> default_norm_triples()
{
    using exponents::gradient_ranges_time_exponent;
    std::vector<NormTriple> t = {
        {Exponent(4), Exponent(4), 0},
        {Exponent(3), Exponent(6), 0},
        {Exponent::infinity(), Exponent(2), 0},
        {Exponent(2), Exponent(2), 1},
    };
    for (const char* q : {"8/5", "9/5", "9/2"}) {
        const Exponent qe = Exponent::parse(q);
        t.push_back({gradient_ranges_time_exponent(qe), qe, 1});
    }
    return t;
}

NormTriple parse_norm_triple(const std::string& r, const std::string& q, int k)
{
    if (k != 0 && k != 1) throw std::invalid_argument("derivative order must be 0 or 1");
    return {Exponent::parse(r), Exponent::parse(q), k};
}

LedgerReport criterion_report(const Trajectory& traj, const std::vector<NormTriple>& triples)
{
    LedgerReport rep;
    if (traj.empty()) throw std::invalid_argument("empty trajectory");
    std::vector<double> E, Z, F;
    for (const auto& s : traj) {
        E.push_back(kinetic_energy(s.field));
        Z.push_back(enstrophy(s.field));
        F.push_back(inner_product(nonlinear_term(s.field), s.field));
    }
    const double dt = traj.dt();
    const auto D = cumulative_trapezoid(Z, dt);
    const auto Fc = cumulative_trapezoid(F, dt);
    rep.initial_energy = E[0];
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double diss = traj.viscosity() * D[i];
        const double res = i == 0 ? 0.0 : E[i] + diss - E[0];
        rep.rows.push_back({traj[i].time, E[i], Z[i], diss, res, Fc[i]});
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(res));
    }
    rep.flux_integral = Fc.back();
    for (const auto& t : triples) {
        NormEntry e;
        e.triple = t;
        e.value = mixed_norm(traj, t.r, t.q, t.derivative_order);
        e.finite = std::isfinite(e.value);
        e.verdict = exponents::classify(t.derivative_order == 0 ? exponents::MixedNormSpace::velocity(t.r, t.q)
                                                                 : exponents::MixedNormSpace::gradient(t.r, t.q));
        rep.norms.push_back(std::move(e));
    }
    return rep;
}

std::vector<RefinementFlag> compare_reports(const LedgerReport& coarse, const LedgerReport& fine)
{
    if (coarse.norms.size() != fine.norms.size()) throw std::invalid_argument("reports measure different norms");
    std::vector<RefinementFlag> out;
    for (std::size_t i = 0; i < coarse.norms.size(); ++i) {
        const auto& a = coarse.norms[i];
        const auto& b = fine.norms[i];
        if (!(a.triple.r == b.triple.r) || !(a.triple.q == b.triple.q) ||
            a.triple.derivative_order != b.triple.derivative_order)
            throw std::invalid_argument("reports measure different norms");
        RefinementFlag f{a.triple, a.value, b.value, 0.0, false};
        if (a.value == 0.0)
            f.ratio = b.value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
        else
            f.ratio = b.value / a.value;
        f.grows = f.ratio > 2.0;
        out.push_back(f);
    }
    return out;
}

void write_csv(std::ostream& out, const LedgerReport& report)
{
    out << "t,energy,enstrophy,dissipation,residual,flux\n";
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.energy, r.enstrophy,
                      r.dissipation, r.residual, r.flux);
        out << buf;
    }
}

void write_json(std::ostream& out, const LedgerReport& report)
{
    nlohmann::ordered_json j;
    j["initial_energy"] = number(report.initial_energy);
    j["max_abs_residual"] = number(report.max_abs_residual);
    j["flux_integral"] = number(report.flux_integral);
    auto norms = nlohmann::ordered_json::array();
    for (const auto& e : report.norms) {
        const auto& v = e.verdict;
        nlohmann::ordered_json n;
        n["r"] = e.triple.r.str();
        n["q"] = e.triple.q.str();
        n["k"] = e.triple.derivative_order;
        n["value"] = number(e.value);
        n["finite"] = e.finite;
        if (v.embedded_velocity)
            n["embedded_velocity"] = {{"r", v.embedded_velocity->time_exp.str()},
                                      {"s", v.embedded_velocity->space_exp.str()},
                                      {"finite_exponents_only", v.embedding_finite_only}};
        n["serrin"] = check_json(v.serrin);
        n["shinbrot"] = check_json(v.shinbrot);
        n["leray_hopf_interpolation"] = check_json(v.leray_hopf_interpolation);
        n["leslie_shvydkoy"] = check_json(v.leslie_shvydkoy);
        n["gradient_regularity"] = check_json(v.gradient_regularity);
        n["gradient_case"] = exponents::to_string(v.gradient_case);
        n["gradient_ranges"] = check_json(v.gradient_ranges);
        norms.push_back(std::move(n));
    }
    j["norms"] = std::move(norms);
    auto splits = nlohmann::ordered_json::array();
    for (const auto& s : report.flux_splits)
        splits.push_back({{"eps", s.eps},
                          {"cutoff", s.cutoff},
                          {"mollified", number(s.mollified)},
                          {"lowpass_term", number(s.lowpass_term)},
                          {"mollifier_term", number(s.mollifier_term)},
                          {"flux_term", number(s.flux_term)}});
    j["flux_splits"] = std::move(splits);
    if (report.probe) {
        const auto& p = *report.probe;
        nlohmann::ordered_json pj;
        pj["r"] = p.r.str();
        pj["s"] = p.s.str();
        pj["base_n"] = p.base_n;
        pj["refined"] = p.refined;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : p.rows)
            rows.push_back({{"alpha", r.pair.time.str()},
                            {"beta", r.pair.space.str()},
                            {"matches_closed_form", r.matches_closed_form},
                            {"transport_norm", number(r.transport_norm)},
                            {"pressure_norm", number(r.pressure_norm)},
                            {"transport_norm_refined", number(r.transport_norm_refined)},
                            {"pressure_norm_refined", number(r.pressure_norm_refined)},
                            {"finite", r.finite},
                            {"refinement_stable", r.refinement_stable}});
        pj["rows"] = std::move(rows);
        pj["warnings"] = p.warnings;
        j["oseen_probe"] = std::move(pj);
    }
    out << j.dump(2) << '\n';
}

}  // namespace nselab::ledger
