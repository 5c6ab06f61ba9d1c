// Spectral fields: transforms, projection, differential operators, norms.

#include <doctest.h>

#include "nselab/parallel.hpp"
#include "nselab/spectral_field.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace nselab;
using std::cos;
using std::sin;

namespace {

constexpr double pi = std::numbers::pi;

/// Arbitrary real field with random samples; not divergence-free.
FourierField random_field(Grid g, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    RealField r(g);
    for (auto& c : r.comp)
        for (auto& v : c) v = N(rng);
    return dealias(to_fourier(r));
}

double max_diff(const RealField& a, const RealField& b)
{
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i) m = std::max(m, std::abs(a.comp[c][i] - b.comp[c][i]));
    return m;
}

/// sum_k |c_k|^2 over the full spectrum, from the stored half.
double coefficient_energy(const FourierField& f)
{
    double s = 0.0;
    for_each_mode(f.grid, [&](std::size_t i, int, int, int, int ix) {
        for (int c = 0; c < 3; ++c) s += f.grid.hermitian_weight(ix) * std::norm(f.comp[c][i]);
    });
    return s;
}

bool bit_equal(const FourierField& a, const FourierField& b)
{
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i)
            if (a.comp[c][i] != b.comp[c][i]) return false;
    return true;
}

}  // namespace

TEST_CASE("grid rejects odd and small sizes")
{
    CHECK_THROWS_AS(Grid(6), std::invalid_argument);
    CHECK_THROWS_AS(Grid(17), std::invalid_argument);
    CHECK(Grid(16).cell_volume() == doctest::Approx(std::pow(2 * pi / 16, 3)));
}

TEST_CASE("round trip through the transform")
{
    const Grid g(16);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    RealField r(g);
    for (auto& c : r.comp)
        for (auto& v : c) v = U(rng);
    CHECK(max_diff(to_real(to_fourier(r)), r) <= 1e-12);
}

TEST_CASE("Parseval: grid quadrature equals the coefficient sum")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const FourierField f = random_field(Grid(16), seed);
        const double q = lq_norm(to_real(f), Exponent(2));
        const double spectral = coefficient_energy(f) * Grid::volume();
        CHECK(std::abs(q * q - spectral) <= 1e-12 * spectral);
        CHECK(std::abs(inner_product(f, f) - spectral) <= 1e-12 * spectral);
    }
}

TEST_CASE("Leray projection annihilates gradients and keeps divergence-free fields")
{
    const Grid g(16);
    // grad cos x = (-sin x, 0, 0)
    const FourierField grad = to_fourier(RealField::from_function(g, [](double x, double, double) {
        return std::array<double, 3>{-sin(x), 0.0, 0.0};
    }));
    CHECK(l2_norm_spectral(leray_project(grad)) <= 1e-13);
    const FourierField tg = taylor_green(g);
    CHECK(l2_norm_spectral(leray_project(tg) - tg) <= 1e-13 * l2_norm_spectral(tg));
}

TEST_CASE("Leray projection is idempotent, self-adjoint and contracting")
{
    const Grid g(16);
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        const FourierField f = random_field(g, seed);
        const FourierField h = random_field(g, seed + 100);
        const FourierField pf = leray_project(f);
        CHECK(relative_divergence(pf) <= 1e-13);
        const double nf = l2_norm_spectral(f);
        CHECK(l2_norm_spectral(leray_project(pf) - pf) <= 1e-13 * nf);
        CHECK(std::abs(inner_product(pf, h) - inner_product(f, leray_project(h))) <=
              1e-12 * nf * l2_norm_spectral(h));
        CHECK(l2_norm_spectral(pf) <= nf);
        // Divergence of the projection, as a scalar field.
        const auto div = to_real(divergence(pf));
        double m = 0.0;
        for (double v : div) m = std::max(m, std::abs(v));
        CHECK(m <= 1e-12 * nf);
        // f = Pf + (I - P)f
        CHECK(l2_norm_spectral(pf + gradient_part(f) - f) <= 1e-13 * nf);
    }
}

TEST_CASE("differential operators")
{
    const Grid g(16);
    RealField c(g);
    for (auto& v : c.comp[0]) v = 3.0;
    const auto gc = gradient(to_fourier(c));
    for (const auto& row : gc.d)
        for (const auto& a : row)
            for (const auto& z : a) CHECK(std::abs(z) == 0.0);

    // curl of (sin x cos y, -cos x sin y, 0) is (0, 0, 2 sin x sin y).
    const auto w = to_real(curl(taylor_green(g)));
    const auto expected = RealField::from_function(g, [](double x, double y, double) {
        return std::array<double, 3>{0.0, 0.0, 2.0 * sin(x) * sin(y)};
    });
    CHECK(max_diff(w, expected) <= 1e-13);

    // div curl = 0
    const FourierField f = random_field(g, 5);
    const auto dc = to_real(divergence(curl(f)));
    double m = 0.0;
    for (double v : dc) m = std::max(m, std::abs(v));
    CHECK(m <= 1e-12 * l2_norm_spectral(f));

    // Gradient of (sin(2x + z), 0, 0): d_x = 2 cos, d_z = cos.
    const FourierField s = to_fourier(RealField::from_function(g, [](double x, double, double z) {
        return std::array<double, 3>{sin(2 * x + z), 0.0, 0.0};
    }));
    const auto gs = gradient(s);
    SpectralScalar d0(g), d2(g);
    d0.data = gs.d[0][0];
    d2.data = gs.d[0][2];
    const auto r0 = to_real(d0);
    const auto r2 = to_real(d2);
    const double h = g.spacing();
    double e = 0.0;
    for (int iz = 0; iz < 16; ++iz)
        for (int iy = 0; iy < 16; ++iy)
            for (int ix = 0; ix < 16; ++ix) {
                const std::size_t idx = ix + 16 * (iy + 16 * iz);
                const double arg = 2 * ix * h + iz * h;
                e = std::max(e, std::abs(r0[idx] - 2 * cos(arg)));
                e = std::max(e, std::abs(r2[idx] - cos(arg)));
            }
    CHECK(e <= 1e-13);
}

TEST_CASE("nonlinear term vanishes for Taylor-Green and a single mode")
{
    const Grid g(16);
    CHECK(l2_norm_spectral(nonlinear_term(taylor_green(g))) <= 1e-13);
    CHECK(l2_norm_spectral(nonlinear_term(single_mode(g))) <= 1e-13);
    CHECK_THROWS_AS(nonlinear_term(random_field(g, 1)), std::invalid_argument);
}

TEST_CASE("nonlinear term is skew: (P[(u.grad)u], u) = 0")
{
    for (double sigma : {0.8, 1.5, 2.5})
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const FourierField u = random_rough_field(sigma, seed, Grid(16));
            const double flux = inner_product(nonlinear_term(u), u);
            const double scale = inner_product(u, u) * sobolev_seminorm(u, Exponent(2));
            CHECK(std::abs(flux) <= 1e-12 * scale);
        }
}

TEST_CASE("transport term against a direct derivative")
{
    const Grid g(16);
    RealField U(g);
    for (auto& v : U.comp[1]) v = 2.0;  // U = (0, 2, 0)
    const FourierField v = to_fourier(RealField::from_function(g, [](double, double y, double) {
        return std::array<double, 3>{sin(y), 0.0, 0.0};
    }));
    const auto t = to_real(transport_term(to_fourier(U), v));
    const auto expected = RealField::from_function(g, [](double, double y, double) {
        return std::array<double, 3>{2.0 * cos(y), 0.0, 0.0};
    });
    CHECK(max_diff(t, expected) <= 1e-13);
}

TEST_CASE("norm examples")
{
    const Grid g(16);
    RealField c(g);
    for (auto& v : c.comp[2]) v = -1.5;
    CHECK(lq_norm(c, Exponent(2)) == doctest::Approx(1.5 * std::pow(2 * pi, 1.5)).epsilon(1e-14));
    const auto s = RealField::from_function(g, [](double x, double, double) {
        return std::array<double, 3>{sin(x), 0.0, 0.0};
    });
    CHECK(lq_norm(s, Exponent(2)) == doctest::Approx(std::sqrt(4 * pi * pi * pi)).epsilon(1e-14));
    CHECK(lq_norm(s, Exponent::infinity()) == doctest::Approx(1.0).epsilon(1e-14));
    // mean of sin^4 is 3/8; the grid sum is exact for this trigonometric polynomial.
    CHECK(lq_norm(s, Exponent(4)) == doctest::Approx(std::pow(0.375 * 8 * pi * pi * pi, 0.25)).epsilon(1e-14));
    // Taylor-Green gradient: every entry has mean square 1/4, four nonzero entries.
    const auto tg = taylor_green(g);
    CHECK(std::pow(sobolev_seminorm(tg, Exponent(2)), 2) ==
          doctest::Approx(oracle::taylor_green_enstrophy(1.0)).epsilon(1e-13));
    CHECK(0.5 * inner_product(tg, tg) == doctest::Approx(oracle::taylor_green_energy(1.0)).epsilon(1e-13));
}

TEST_CASE("random rough fields")
{
    const Grid g(16);
    const auto a = random_rough_field(1.2, 7, g);
    const auto b = random_rough_field(1.2, 7, g);
    CHECK(bit_equal(a, b));
    CHECK_FALSE(bit_equal(a, random_rough_field(1.2, 8, g)));
    CHECK(relative_divergence(a) <= 1e-13);
    CHECK_THROWS_AS(random_rough_field(0.0, 1, g), std::invalid_argument);

    // sigma = 2: the gradient norm converges as the band widens.
    const double g32 = sobolev_seminorm(random_rough_field(2.0, 3, Grid(32)), Exponent(2));
    const double g64 = sobolev_seminorm(random_rough_field(2.0, 3, Grid(64)), Exponent(2));
    CHECK(std::abs(g64 / g32 - 1.0) <= 0.10);
    // sigma = 0.8: the H^1 seminorm keeps growing.
    const double r32 = sobolev_seminorm(random_rough_field(0.8, 3, Grid(32)), Exponent(2));
    const double r64 = sobolev_seminorm(random_rough_field(0.8, 3, Grid(64)), Exponent(2));
    CHECK(r64 / r32 > 1.1);
}

TEST_CASE("resampling keeps the shared modes")
{
    const auto f = random_rough_field(1.0, 2, Grid(16));
    const auto up = resample(f, Grid(32));
    CHECK(bit_equal(resample(up, Grid(16)), f));
    CHECK(inner_product(up, up) == doctest::Approx(inner_product(f, f)).epsilon(1e-14));
}

TEST_CASE("low pass and dealias")
{
    const auto f = random_field(Grid(16), 9);
    const auto lp = low_pass(f, 2.0);
    for_each_mode(f.grid, [&](std::size_t i, int kx, int ky, int kz, int) {
        const bool kept = kx * kx + ky * ky + kz * kz <= 4;
        for (int c = 0; c < 3; ++c) CHECK((lp.comp[c][i] == f.comp[c][i] || (!kept && lp.comp[c][i] == Complex{})));
    });
    CHECK(bit_equal(dealias(f), f));
}

TEST_CASE("results do not depend on the thread count")
{
    const auto u = random_rough_field(1.5, 4, Grid(32));
    set_thread_count(1);
    const auto a = nonlinear_term(u);
    const double na = inner_product(a, u);
    set_thread_count(4);
    const auto b = nonlinear_term(u);
    const double nb = inner_product(b, u);
    set_thread_count(1);
    CHECK(bit_equal(a, b));
    CHECK(na == nb);
}
