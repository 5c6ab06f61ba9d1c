// Energy ledger: balance residuals, flux, mixed norms, the Oseen probe, reports.

#include <doctest.h>

#include "nselab/energy_ledger.hpp"
#include "nselab/nse_solver.hpp"
#include "oracles.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

using namespace nselab;
using namespace nselab::ledger;

namespace {

SolverConfig cfg(int n, double dt, double t_end, SolverMode mode, const std::string& kind)
{
    SolverConfig c;
    c.n = n;
    c.dt = dt;
    c.t_end = t_end;
    c.mode = mode;
    c.initial.kind = kind;
    return c;
}

double max_abs_residual(const Trajectory& t)
{
    double m = 0.0;
    for (double r : balance_residuals(t)) m = std::max(m, std::abs(r));
    return m;
}

Trajectory zero_trajectory(int steps = 20)
{
    Trajectory t(Grid(8), 1.0);
    for (int k = 0; k <= steps; ++k) t.push_back(k * 0.01, zero_field(Grid(8)));
    return t;
}

}  // namespace

TEST_CASE("energy and enstrophy of Taylor-Green")
{
    const auto u = taylor_green(Grid(16), 2.0);
    CHECK(kinetic_energy(u) == doctest::Approx(oracle::taylor_green_energy(2.0)).epsilon(1e-14));
    CHECK(enstrophy(u) == doctest::Approx(oracle::taylor_green_enstrophy(2.0)).epsilon(1e-14));
}

TEST_CASE("balance residual")
{
    const auto z = zero_trajectory();
    for (double r : balance_residuals(z)) CHECK(r == 0.0);

    const auto tg = solve(cfg(16, 1e-3, 0.1, SolverMode::NavierStokes, "taylor-green"));
    const auto res = balance_residuals(tg);
    CHECK(res.front() == 0.0);
    CHECK(balance_residual(tg, 0.05) == res[50]);
    CHECK_THROWS_AS(balance_residual(tg, 0.0505), std::invalid_argument);
    // Trapezoid floor (dt^2/12) * 16 E0 (1 - e^{-4t}); the residual is positive.
    const double E0 = oracle::taylor_green_energy(1.0);
    for (std::size_t i = 1; i < res.size(); ++i) {
        const double t = tg[i].time;
        const double floor = 1e-6 / 12.0 * 16.0 * E0 * (1.0 - std::exp(-4.0 * t));
        CHECK(res[i] == doctest::Approx(floor).epsilon(0.01));
    }
}

TEST_CASE("stokes single-mode residual converges at second order")
{
    double prev = 0.0;
    for (double dt : {2e-3, 1e-3, 5e-4}) {
        const double r = max_abs_residual(solve(cfg(8, dt, 0.5, SolverMode::Stokes, "single-mode")));
        if (prev > 0.0) {
            CHECK(prev / r >= 3.5);
            CHECK(prev / r <= 4.5);
        }
        prev = r;
    }
}

TEST_CASE("unmollified flux is at round-off")
{
    SolverConfig c = cfg(16, 1e-3, 0.02, SolverMode::NavierStokes, "rough");
    c.initial.sigma = 1.0;
    c.initial.seed = 5;
    const auto t = solve(c);
    double scale = 0.0;
    for (const auto& s : t)
        scale = std::max(scale, inner_product(s.field, s.field) * std::sqrt(enstrophy(s.field)));
    CHECK(std::abs(flux_integral(t)) <= 1e-11 * scale * 0.02);
    CHECK(flux_integral(zero_trajectory()) == 0.0);
}

TEST_CASE("mollified flux split on the three-dimensional vortex")
{
    const auto t = solve(cfg(16, 1e-3, 0.2, SolverMode::NavierStokes, "taylor-green-3d"));
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.04, 0.02, 0.01}) {
        const auto s = mollified_flux(t, eps, 100.0);
        CHECK(s.cutoff == 100.0);
        CHECK(s.lowpass_term == 0.0);
        CHECK(std::abs(s.mollified - (s.lowpass_term + s.mollifier_term + s.flux_term)) <=
              1e-12 * std::abs(s.mollified) + 1e-12);
        CHECK(std::abs(s.mollifier_term) < prev);
        prev = std::abs(s.mollifier_term);
    }
    CHECK(mollified_flux(t, 0.05).cutoff == doctest::Approx(20.0));
}

TEST_CASE("hopf identity residual")
{
    CHECK(hopf_identity_residual(zero_trajectory(40), 0.05, 0.2) == 0.0);
    const auto s1 = solve(cfg(8, 1e-3, 0.5, SolverMode::Stokes, "single-mode"));
    const auto s2 = solve(cfg(8, 5e-4, 0.5, SolverMode::Stokes, "single-mode"));
    const double r1 = hopf_identity_residual(s1, 0.05, 0.25);
    const double r2 = hopf_identity_residual(s2, 0.05, 0.25);
    CHECK(std::abs(r1 / r2) >= 3.5);
    const auto t1 = solve(cfg(8, 1e-3, 0.5, SolverMode::NavierStokes, "taylor-green"));
    const auto t2 = solve(cfg(8, 5e-4, 0.5, SolverMode::NavierStokes, "taylor-green"));
    CHECK(std::abs(hopf_identity_residual(t1, 0.05, 0.25) / hopf_identity_residual(t2, 0.05, 0.25)) >= 3.5);
    CHECK_THROWS_AS(hopf_identity_residual(s1, 0.05, 0.04), std::invalid_argument);
    CHECK_THROWS_AS(hopf_identity_residual(s1, 0.05, 0.47), std::invalid_argument);
}

TEST_CASE("mixed norm examples")
{
    const Grid g(16);
    Trajectory c(g, 1.0);
    const auto f = taylor_green(g);
    for (int k = 0; k <= 10; ++k) c.push_back(k * 0.05, f);
    const double l3 = lq_norm(f, Exponent(3));
    CHECK(mixed_norm(c, Exponent(4), Exponent(3)) == doctest::Approx(std::pow(0.5, 0.25) * l3).epsilon(1e-13));

    const auto tg = solve(cfg(16, 1e-3, 0.1, SolverMode::NavierStokes, "taylor-green"));
    const double E0 = oracle::taylor_green_energy(1.0);
    const double g22 = mixed_norm(tg, Exponent(2), Exponent(2), 1);
    CHECK(g22 * g22 == doctest::Approx(E0 * (1.0 - std::exp(-0.4))).epsilon(1e-5));
    CHECK(mixed_norm(tg, Exponent::infinity(), Exponent(2)) == doctest::Approx(std::sqrt(2.0 * E0)).epsilon(1e-14));
    // r = inf dominates T^{-1/r} times finite-r norms.
    for (long r : {1L, 2L, 5L})
        CHECK(mixed_norm(tg, Exponent(r), Exponent(2)) <=
              std::pow(0.1, 1.0 / double(r)) * mixed_norm(tg, Exponent::infinity(), Exponent(2)));
    for (const auto& t : default_norm_triples()) CHECK(mixed_norm(zero_trajectory(), t.r, t.q, t.derivative_order) == 0.0);
}

TEST_CASE("oseen probe with zero transport has no pressure")
{
    Trajectory z(Grid(8), 1.0);
    for (int k = 0; k <= 10; ++k) z.push_back(k * 0.01, zero_field(Grid(8)));
    const auto p = oseen_regularity_probe(z, Exponent(3), Exponent(6), 8, true, 1e-3);
    REQUIRE(p.rows.size() == 2);
    for (const auto& row : p.rows) {
        CHECK(row.finite);
        CHECK(row.matches_closed_form);
        CHECK(row.transport_norm == 0.0);
        CHECK(row.pressure_norm == 0.0);
        CHECK(row.pressure_norm_refined == 0.0);
        CHECK(row.refinement_stable);
    }
    CHECK(p.rows[0].pair == exponents::TimeSpacePair{Exponent(Rational(6, 5)), Exponent(Rational(3, 2))});
    CHECK(p.warnings.empty());
    CHECK_THROWS_AS(oseen_regularity_probe(z, Exponent(3), Exponent(5)), std::invalid_argument);
}

TEST_CASE("oseen probe on a steady cellular transport")
{
    const Grid g(8);
    Trajectory U(g, 1.0);
    for (int k = 0; k <= 10; ++k) U.push_back(k * 0.01, taylor_green_3d(g));
    const auto p = oseen_regularity_probe(U, Exponent(4), Exponent(4), 8, true, 1e-3);
    REQUIRE(p.rows.size() == 1);
    CHECK(p.rows[0].matches_closed_form);
    CHECK(p.rows[0].finite);
    CHECK(p.rows[0].transport_norm > 0.0);
    CHECK(p.rows[0].pressure_norm > 0.0);
    CHECK(p.rows[0].refinement_stable);
}

TEST_CASE("subsample and probe forcing")
{
    const auto z = zero_trajectory(100);
    const auto s = subsample(z, 51);
    CHECK(s.size() == 51);
    CHECK(s.dt() == doctest::Approx(0.02));
    CHECK(subsample(z, 200).size() == 101);
    const auto f = probe_forcing(z);
    CHECK(l2_norm_spectral(f.front().field) == 0.0);
    CHECK(l2_norm_spectral(f.back().field) <= 1e-14);
    CHECK(relative_divergence(f[50].field) <= 1e-13);
}

TEST_CASE("criterion report and refinement comparison")
{
    const auto tg = solve(cfg(16, 1e-3, 0.05, SolverMode::NavierStokes, "taylor-green"));
    const auto rep = criterion_report(tg);
    CHECK(rep.rows.size() == tg.size());
    CHECK(rep.rows.front().residual == 0.0);
    for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].dissipation >= rep.rows[i - 1].dissipation);
    CHECK(rep.norms.size() == default_norm_triples().size());
    for (const auto& e : rep.norms) CHECK(e.finite);
    CHECK(rep.norms[0].verdict.shinbrot.satisfied);

    const auto zrep = criterion_report(zero_trajectory());
    for (const auto& e : zrep.norms) CHECK(e.value == 0.0);

    // Rough data across two resolutions: the H^1-type norms grow.
    SolverConfig c = cfg(16, 1e-3, 0.002, SolverMode::NavierStokes, "rough");
    c.initial.sigma = 0.6;
    c.initial.seed = 1;
    const auto coarse = criterion_report(solve(c));
    c.n = 32;
    const auto fine = criterion_report(solve(c));
    const auto flags = compare_reports(coarse, fine);
    REQUIRE(flags.size() == coarse.norms.size());
    for (const auto& f : flags) CHECK(f.ratio == doctest::Approx(f.fine / f.coarse));
    // Velocity norms stay put; the gradient norms rise with the resolved band.
    CHECK(std::abs(flags[0].ratio - 1.0) < 0.1);
    CHECK_FALSE(flags[0].grows);
    CHECK(flags[3].ratio > 1.2);
}

TEST_CASE("CSV and JSON outputs parse back")
{
    const auto tg = solve(cfg(16, 1e-3, 0.02, SolverMode::NavierStokes, "taylor-green"));
    auto rep = criterion_report(tg);
    rep.flux_splits.push_back(mollified_flux(tg, 0.005));
    std::ostringstream csv;
    write_csv(csv, rep);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,energy,enstrophy,dissipation,residual,flux");
    std::size_t k = 0;
    while (std::getline(in, line)) {
        double v[6];
        char sep;
        std::istringstream row(line);
        row >> v[0];
        for (int j = 1; j < 6; ++j) row >> sep >> v[j];
        const auto& r = rep.rows[k++];
        CHECK(v[0] == r.t);
        CHECK(v[1] == r.energy);
        CHECK(v[2] == r.enstrophy);
        CHECK(v[3] == r.dissipation);
        CHECK(v[4] == r.residual);
        CHECK(v[5] == r.flux);
    }
    CHECK(k == rep.rows.size());

    std::ostringstream js;
    write_json(js, rep);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j["initial_energy"].get<double>() == rep.initial_energy);
    CHECK(j["max_abs_residual"].get<double>() == rep.max_abs_residual);
    REQUIRE(j["norms"].size() == rep.norms.size());
    CHECK(j["norms"][4]["r"] == "8");
    CHECK(j["norms"][4]["q"] == "8/5");
    CHECK(Exponent::parse(j["norms"][6]["r"].get<std::string>()) == Exponent(Rational(13, 9)));
    CHECK(j["flux_splits"].size() == 1);
}
