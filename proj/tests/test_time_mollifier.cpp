// Friederichs time mollifier: kernel, discrete weights, pairings, cancellation.

#include <doctest.h>

#include "nselab/time_mollifier.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace nselab;
using namespace nselab::mollifier;

namespace {

/// a(t) e on an n = 8 grid with e = single_mode, sampled at k dt for k = 0..steps.
Trajectory scalar_trajectory(const std::function<double(double)>& a, double dt, int steps)
{
    const Grid g(8);
    const FourierField e = single_mode(g);
    Trajectory t(g, 1.0);
    for (int k = 0; k <= steps; ++k) t.push_back(k * dt, a(k * dt) * e);
    return t;
}

/// Coefficient of the single mode, recovering a(t) from a field.
double amplitude(const FourierField& f)
{
    const FourierField e = single_mode(f.grid);
    return inner_product(f, e) / inner_product(e, e);
}

/// Least-squares slope of log y against log x.
double fitted_order(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("kernel has unit mass, is even and supported in [-eps, eps]")
{
    for (double eps : {1.0, 0.1, 0.013}) {
        const MollifierKernel k(eps);
        CHECK(std::abs(k.mass() - 1.0) <= 1e-12);
        for (int i = 0; i <= 100; ++i) {
            const double t = eps * i / 97.0;
            CHECK(k(t) == k(-t));
            CHECK(k.derivative(t) == -k.derivative(-t));
        }
        CHECK(k(eps) == 0.0);
        CHECK(k(1.5 * eps) == 0.0);
        CHECK(k(0.999 * eps) >= 0.0);
    }
    CHECK_THROWS_AS(MollifierKernel(0.0), std::invalid_argument);
}

TEST_CASE("kernel derivative matches a central difference")
{
    const MollifierKernel k(0.2);
    for (double t : {-0.15, -0.05, 0.03, 0.12}) {
        const double h = 1e-6;
        CHECK(k.derivative(t) == doctest::Approx((k(t + h) - k(t - h)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("discrete weights are even with unit mass")
{
    const DiscreteMollifier k(0.05, 1e-3);
    CHECK(k.half_width() == 50);
    double mass = 0.0;
    for (int m = -k.half_width(); m <= k.half_width(); ++m) {
        CHECK(k.weight(m) == k.weight(-m));
        CHECK(k.derivative_weight(m) == -k.derivative_weight(-m));
        mass += k.weight(m);
    }
    CHECK(std::abs(mass - 1.0) <= 1e-14);
    // The sampled kernel already has nearly unit mass before rescaling.
    CHECK(std::abs(k.discrete_mass() - 1.0) <= 1e-8);
    CHECK(k.weight(51) == 0.0);
    CHECK_THROWS_AS(DiscreteMollifier(0.002, 1e-3), std::invalid_argument);
}

TEST_CASE("mollify reproduces constants and linear functions in the interior")
{
    const double dt = 1e-3;
    const double eps = 0.05;
    const auto c = mollify(scalar_trajectory([](double) { return 2.5; }, dt, 400), eps);
    const auto l = mollify(scalar_trajectory([](double t) { return t; }, dt, 400), eps);
    for (std::size_t i = 0; i < c.trajectory.size(); ++i) {
        if (c.near_boundary[i]) continue;
        CHECK(amplitude(c.trajectory[i].field) == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(std::abs(amplitude(l.trajectory[i].field) - i * dt) <= 1e-14);
    }
    CHECK(c.near_boundary.front());
    CHECK(c.near_boundary.back());
    CHECK_FALSE(c.near_boundary[200]);
    CHECK(c.trajectory.grid() == Grid(8));
}

TEST_CASE("interior mollification error is second order in eps")
{
    const double dt = 1e-4;
    auto a = [](double t) { return std::sin(3.0 * t); };
    const auto traj = scalar_trajectory(a, dt, 10000);
    std::vector<double> epss, errs;
    for (double eps : {0.08, 0.04, 0.02, 0.01}) {
        const std::size_t i = traj.index_of(0.5);
        const auto m = mollify_at(traj, DiscreteMollifier(eps, dt), i, traj.size() - 1);
        epss.push_back(eps);
        errs.push_back(amplitude(m) - a(0.5));
    }
    const double order = fitted_order(epss, errs);
    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("mollification commutes with the spatial gradient")
{
    const Grid g(8);
    Trajectory t(g, 1.0);
    for (int k = 0; k <= 40; ++k) {
        FourierField f = random_rough_field(1.0, 3, g);
        f *= std::cos(0.1 * k);
        t.push_back(k * 0.01, f);
    }
    const auto m = mollify(t, 0.05).trajectory;
    Trajectory dx(g, 1.0);  // first column of the gradient, as a vector field
    for (const auto& s : t) {
        const auto G = gradient(s.field);
        FourierField d(g);
        for (int c = 0; c < 3; ++c) d.comp[c] = G.d[c][0];
        dx.push_back(s.time, d);
    }
    const auto md = mollify(dx, 0.05).trajectory;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto G = gradient(m[i].field);
        for (int c = 0; c < 3; ++c)
            for (std::size_t j = 0; j < G.d[c][0].size(); ++j)
                CHECK(std::abs(G.d[c][0][j] - md[i].field.comp[c][j]) <= 1e-15);
    }
}

TEST_CASE("interior energy pairing on a constant trajectory is half the energy")
{
    const auto t = scalar_trajectory([](double) { return 1.0; }, 1e-3, 300);
    const double half = 0.5 * inner_product(t[0].field, t[0].field);
    CHECK(mollifier_energy_pairing(t, 0.05, 0.15) == doctest::Approx(half).epsilon(1e-14));
    CHECK_THROWS_AS(mollifier_energy_pairing(t, 0.05, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(mollifier_energy_pairing(t, 0.05, 0.28), std::invalid_argument);
}

TEST_CASE("endpoint energy pairing sees half the kernel mass")
{
    const auto c = scalar_trajectory([](double) { return 1.0; }, 1e-3, 300);
    CHECK(std::abs(endpoint_energy_pairing(c, 0.05, 0.2)) <= 1e-14 * inner_product(c[0].field, c[0].field));
    CHECK_THROWS_AS(endpoint_energy_pairing(c, 0.05, 0.04), std::invalid_argument);

    // Decaying Taylor-Green amplitude: deviation halves with eps.
    const auto tg = scalar_trajectory([](double t) { return std::exp(-2.0 * t); }, 1e-4, 5000);
    const double d1 = endpoint_energy_pairing(tg, 0.04, 0.4);
    const double d2 = endpoint_energy_pairing(tg, 0.02, 0.4);
    CHECK(d2 / d1 == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("even kernel cancellation on windowed smooth trajectories")
{
    const double T = 0.5;
    const double eps = 0.05;
    // Smooth bump supported in (eps, T - eps).
    auto window = [&](double t) {
        const double s = (t - 0.5 * T) / (0.5 * T - eps);
        return MollifierKernel::bump(s);
    };
    const auto w = scalar_trajectory(window, 1e-3, 500);
    const double energy = inner_product(w[250].field, w[250].field);
    CHECK(std::abs(even_kernel_cancellation(w, eps)) <= 1e-8 * energy);

    auto wave = [&](double t) { return window(t) * (1.0 + std::sin(40.0 * t)); };
    CHECK(std::abs(even_kernel_cancellation(scalar_trajectory(wave, 1e-3, 500), eps)) <= 1e-8 * energy);

    // Windowed constant: the unit window itself.
    CHECK(std::abs(even_kernel_cancellation(w, 0.1)) <= 1e-8 * energy);

    Trajectory single(Grid(8), 1.0);
    single.push_back(0.0, single_mode(Grid(8)));
    CHECK_THROWS_AS(even_kernel_cancellation(single, eps), std::invalid_argument);
    CHECK_THROWS_AS(even_kernel_cancellation(w, 0.2), std::invalid_argument);
}

TEST_CASE("gradient mollifier gap shrinks at first order")
{
    const auto tg = scalar_trajectory([](double t) { return std::exp(-2.0 * t); }, 1e-3, 500);
    std::vector<double> epss, gaps;
    for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
        epss.push_back(eps);
        gaps.push_back(gradient_mollifier_gap(tg, eps));
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(std::abs(gaps[i]) < std::abs(gaps[i - 1]));
    CHECK(fitted_order(epss, gaps) >= 0.8);
}
