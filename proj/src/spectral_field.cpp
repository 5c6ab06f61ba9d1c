#include "nselab/spectral_field.hpp"

#include "fft.hpp"
#include "nselab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nselab {

namespace {

using detail::FftPlans;

constexpr double kDivergenceTolerance = 1e-10;

struct Wavevector {
    double x, y, z;
    [[nodiscard]] double norm2() const { return x * x + y * y + z * z; }
};

Wavevector derivative_wavevector(const Grid& g, int kx, int ky, int kz)
{
    return {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky), g.derivative_wavenumber(kz)};
}

bool inside_dealias_band(const Grid& g, int kx, int ky, int kz)
{
    const int K = g.dealias_cutoff();
    return std::abs(kx) <= K && std::abs(ky) <= K && std::abs(kz) <= K;
}

void inverse_components(const Grid& g, const std::array<const SpectralArray*, 3>& in, std::array<RealArray, 3>& out)
{
    const auto& plans = FftPlans::for_grid(g);
    parallel_for(3, [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) plans.inverse(in[c]->data(), out[c].data());
    });
}

}  // namespace

RealField::RealField(Grid g) : grid(g)
{
    for (auto& c : comp) c.assign(g.real_size(), 0.0);
}

RealField RealField::from_function(Grid g, const std::function<std::array<double, 3>(double, double, double)>& fn)
{
    RealField f(g);
    const int n = g.n();
    const double h = g.spacing();
    std::size_t idx = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++idx) {
                const auto v = fn(ix * h, iy * h, iz * h);
                for (int c = 0; c < 3; ++c) f.comp[c][idx] = v[c];
            }
    return f;
}

FourierField::FourierField(Grid g) : grid(g)
{
    for (auto& c : comp) c.assign(g.spectral_size(), Complex{});
}

FourierField& FourierField::operator+=(const FourierField& o) { return axpy(1.0, o); }
FourierField& FourierField::operator-=(const FourierField& o) { return axpy(-1.0, o); }

FourierField& FourierField::operator*=(double a)
{
    for (auto& c : comp)
        for (auto& v : c) v *= a;
    return *this;
}

FourierField& FourierField::axpy(double a, const FourierField& o)
{
    if (!(o.grid == grid)) throw std::invalid_argument("grid mismatch in field arithmetic");
    for (int c = 0; c < 3; ++c) {
        auto& dst = comp[c];
        const auto& src = o.comp[c];
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a * src[i];
    }
    return *this;
}

GradientTensor::GradientTensor(Grid g) : grid(g)
{
    for (auto& row : d)
        for (auto& c : row) c.assign(g.spectral_size(), Complex{});
}

FourierField to_fourier(const RealField& f)
{
    FourierField out(f.grid);
    const auto& plans = FftPlans::for_grid(f.grid);
    parallel_for(3, [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) plans.forward(f.comp[c].data(), out.comp[c].data());
    });
    return out;
}

RealField to_real(const FourierField& f)
{
    RealField out(f.grid);
    inverse_components(f.grid, {&f.comp[0], &f.comp[1], &f.comp[2]}, out.comp);
    return out;
}

RealArray to_real(const SpectralScalar& f)
{
    RealArray out(f.grid.real_size());
    FftPlans::for_grid(f.grid).inverse(f.data.data(), out.data());
    return out;
}

FourierField leray_project(const FourierField& f)
{
    FourierField out = f;
    const Grid& g = f.grid;
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        const auto k = derivative_wavevector(g, kx, ky, kz);
        const double k2 = k.norm2();
        if (k2 == 0.0) return;
        const Complex kdotu = k.x * f.comp[0][i] + k.y * f.comp[1][i] + k.z * f.comp[2][i];
        const Complex s = kdotu / k2;
        out.comp[0][i] -= k.x * s;
        out.comp[1][i] -= k.y * s;
        out.comp[2][i] -= k.z * s;
    });
    return out;
}

FourierField gradient_part(const FourierField& f)
{
    FourierField out = f;
    out -= leray_project(f);
    // The mean mode is divergence-free and stays with the projected part.
    for (auto& c : out.comp) c[0] = Complex{};
    return out;
}

GradientTensor gradient(const FourierField& f)
{
    GradientTensor out(f.grid);
    const Grid& g = f.grid;
    const Complex I(0.0, 1.0);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        const auto k = derivative_wavevector(g, kx, ky, kz);
        const std::array<double, 3> kv{k.x, k.y, k.z};
        for (int c = 0; c < 3; ++c)
            for (int j = 0; j < 3; ++j) out.d[c][j][i] = I * kv[j] * f.comp[c][i];
    });
    return out;
}

SpectralScalar divergence(const FourierField& f)
{
    SpectralScalar out(f.grid);
    const Grid& g = f.grid;
    const Complex I(0.0, 1.0);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        const auto k = derivative_wavevector(g, kx, ky, kz);
        out.data[i] = I * (k.x * f.comp[0][i] + k.y * f.comp[1][i] + k.z * f.comp[2][i]);
    });
    return out;
}

FourierField curl(const FourierField& f)
{
    FourierField out(f.grid);
    const Grid& g = f.grid;
    const Complex I(0.0, 1.0);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        const auto k = derivative_wavevector(g, kx, ky, kz);
        const Complex u = f.comp[0][i], v = f.comp[1][i], w = f.comp[2][i];
        out.comp[0][i] = I * (k.y * w - k.z * v);
        out.comp[1][i] = I * (k.z * u - k.x * w);
        out.comp[2][i] = I * (k.x * v - k.y * u);
    });
    return out;
}

FourierField dealias(const FourierField& f)
{
    FourierField out = f;
    const Grid& g = f.grid;
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        if (!inside_dealias_band(g, kx, ky, kz))
            for (auto& c : out.comp) c[i] = Complex{};
    });
    return out;
}

FourierField low_pass(const FourierField& f, double cutoff)
{
    FourierField out = f;
    const double c2 = cutoff * cutoff;
    for_each_mode(f.grid, [&](std::size_t i, int kx, int ky, int kz, int) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 > c2)
            for (auto& c : out.comp) c[i] = Complex{};
    });
    return out;
}

FourierField resample(const FourierField& f, Grid target)
{
    FourierField out(target);
    const int limit = std::min(f.grid.n(), target.n()) / 2;
    const int src_n = f.grid.n();
    const int src_hx = f.grid.half_x();
    for_each_mode(target, [&](std::size_t i, int kx, int ky, int kz, int) {
        if (kx >= limit || std::abs(ky) >= limit || std::abs(kz) >= limit) return;
        const int sy = ky < 0 ? ky + src_n : ky;
        const int sz = kz < 0 ? kz + src_n : kz;
        const std::size_t j = static_cast<std::size_t>(kx) + static_cast<std::size_t>(src_hx) * (sy + static_cast<std::size_t>(src_n) * sz);
        for (int c = 0; c < 3; ++c) out.comp[c][i] = f.comp[c][j];
    });
    return out;
}

FourierField nonlinear_term(const FourierField& u)
{
    if (relative_divergence(u) > kDivergenceTolerance)
        throw std::invalid_argument("nonlinear_term requires a divergence-free field");
    const Grid& g = u.grid;
    const FourierField ut = dealias(u);
    const FourierField wt = curl(ut);

    RealField up(g), wp(g);
    inverse_components(g, {&ut.comp[0], &ut.comp[1], &ut.comp[2]}, up.comp);
    inverse_components(g, {&wt.comp[0], &wt.comp[1], &wt.comp[2]}, wp.comp);

    // (u.grad)u = omega x u + grad(|u|^2/2); the gradient is removed by P.
    RealField prod(g);
    parallel_for(g.real_size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double u0 = up.comp[0][i], u1 = up.comp[1][i], u2 = up.comp[2][i];
            const double w0 = wp.comp[0][i], w1 = wp.comp[1][i], w2 = wp.comp[2][i];
            prod.comp[0][i] = w1 * u2 - w2 * u1;
            prod.comp[1][i] = w2 * u0 - w0 * u2;
            prod.comp[2][i] = w0 * u1 - w1 * u0;
        }
    });
    return leray_project(dealias(to_fourier(prod)));
}

FourierField transport_term(const FourierField& transport, const FourierField& v)
{
    if (!(transport.grid == v.grid)) throw std::invalid_argument("grid mismatch in transport_term");
    const Grid& g = v.grid;
    const FourierField Ut = dealias(transport);
    const GradientTensor dv = gradient(dealias(v));

    RealField Up(g);
    inverse_components(g, {&Ut.comp[0], &Ut.comp[1], &Ut.comp[2]}, Up.comp);
    RealField out(g);
    for (int c = 0; c < 3; ++c) {
        RealField dvc(g);
        inverse_components(g, {&dv.d[c][0], &dv.d[c][1], &dv.d[c][2]}, dvc.comp);
        auto& dst = out.comp[c];
        parallel_for(g.real_size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                dst[i] = Up.comp[0][i] * dvc.comp[0][i] + Up.comp[1][i] * dvc.comp[1][i] + Up.comp[2][i] * dvc.comp[2][i];
        });
    }
    return dealias(to_fourier(out));
}

double inner_product(const FourierField& f, const FourierField& g)
{
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch in inner_product");
    const Grid& gr = f.grid;
    double sum = 0.0;
    for_each_mode(gr, [&](std::size_t i, int, int, int, int kx_index) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += (f.comp[c][i] * std::conj(g.comp[c][i])).real();
        sum += gr.hermitian_weight(kx_index) * s;
    });
    return sum * Grid::volume();
}

double gradient_inner_product(const FourierField& f, const FourierField& g)
{
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch in gradient_inner_product");
    const Grid& gr = f.grid;
    double sum = 0.0;
    for_each_mode(gr, [&](std::size_t i, int kx, int ky, int kz, int kx_index) {
        const double k2 = derivative_wavevector(gr, kx, ky, kz).norm2();
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += (f.comp[c][i] * std::conj(g.comp[c][i])).real();
        sum += gr.hermitian_weight(kx_index) * k2 * s;
    });
    return sum * Grid::volume();
}

double l2_norm_spectral(const FourierField& f) { return std::sqrt(inner_product(f, f)); }

namespace {

double lq_of_magnitudes(const RealArray& mag2, const Grid& g, const Exponent& q)
{
    if (q.is_infinite()) {
        double m = 0.0;
        for (double v : mag2) m = std::max(m, v);
        return std::sqrt(m);
    }
    const double qd = q.to_double();
    double sum = 0.0;
    if (q == Exponent(2)) {
        for (double v : mag2) sum += v;
    } else {
        const double half_q = 0.5 * qd;
        for (double v : mag2) sum += std::pow(v, half_q);
    }
    return std::pow(sum * g.cell_volume(), 1.0 / qd);
}

}  // namespace

double lq_norm(const RealField& f, const Exponent& q)
{
    RealArray mag2(f.grid.real_size());
    parallel_for(mag2.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            mag2[i] = f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] + f.comp[2][i] * f.comp[2][i];
    });
    return lq_of_magnitudes(mag2, f.grid, q);
}

double lq_norm(const FourierField& f, const Exponent& q) { return lq_norm(to_real(f), q); }

double sobolev_seminorm(const FourierField& f, const Exponent& q)
{
    const Grid& g = f.grid;
    const GradientTensor d = gradient(f);
    RealArray mag2(g.real_size(), 0.0);
    for (int c = 0; c < 3; ++c) {
        RealField row(g);
        inverse_components(g, {&d.d[c][0], &d.d[c][1], &d.d[c][2]}, row.comp);
        parallel_for(mag2.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                mag2[i] += row.comp[0][i] * row.comp[0][i] + row.comp[1][i] * row.comp[1][i] + row.comp[2][i] * row.comp[2][i];
        });
    }
    return lq_of_magnitudes(mag2, g, q);
}

double max_abs(const RealField& f) { return lq_norm(f, Exponent::infinity()); }

double relative_divergence(const FourierField& f)
{
    const Grid& g = f.grid;
    double div_max = 0.0, scale = 0.0;
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        const auto k = derivative_wavevector(g, kx, ky, kz);
        const Complex d = k.x * f.comp[0][i] + k.y * f.comp[1][i] + k.z * f.comp[2][i];
        const double amp = std::sqrt(std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) + std::norm(f.comp[2][i]));
        div_max = std::max(div_max, std::abs(d));
        scale = std::max(scale, std::sqrt(k.norm2()) * amp);
    });
    return scale == 0.0 ? 0.0 : div_max / scale;
}

FourierField zero_field(Grid g) { return FourierField(g); }

FourierField taylor_green(Grid g, double amplitude)
{
    return to_fourier(RealField::from_function(g, [amplitude](double x, double y, double) {
        return std::array<double, 3>{amplitude * std::sin(x) * std::cos(y), -amplitude * std::cos(x) * std::sin(y), 0.0};
    }));
}

FourierField taylor_green_3d(Grid g, double amplitude)
{
    return to_fourier(RealField::from_function(g, [amplitude](double x, double y, double z) {
        return std::array<double, 3>{amplitude * std::sin(x) * std::cos(y) * std::cos(z),
                                     -amplitude * std::cos(x) * std::sin(y) * std::cos(z), 0.0};
    }));
}

FourierField single_mode(Grid g, double amplitude)
{
    return to_fourier(RealField::from_function(g, [amplitude](double x, double, double) {
        return std::array<double, 3>{0.0, amplitude * std::sin(x), 0.0};
    }));
}

namespace {

/// Three standard complex normals drawn from a generator keyed by (seed, k).
std::array<Complex, 3> mode_gaussians(std::uint64_t seed, int kx, int ky, int kz)
{
    constexpr int offset = 1 << 20;
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kx + offset), static_cast<std::uint32_t>(ky + offset),
                      static_cast<std::uint32_t>(kz + offset)};
    std::mt19937_64 gen(seq);
    // Box-Muller on explicit 53-bit uniforms; std::normal_distribution is not
    // specified bit-for-bit across standard libraries.
    auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; };
    std::array<Complex, 3> out;
    for (auto& z : out) {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        z = Complex(r * std::cos(phi), r * std::sin(phi)) * std::sqrt(0.5);
    }
    return out;
}

}  // namespace

FourierField random_rough_field(double sigma, std::uint64_t seed, Grid g)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("random_rough_field requires sigma > 0");
    const int K = g.dealias_cutoff();
    const int side = 2 * K + 1;
    std::vector<std::array<Complex, 3>> noise(static_cast<std::size_t>(side) * side * side);
    auto slot = [&](int kx, int ky, int kz) -> std::array<Complex, 3>& {
        return noise[static_cast<std::size_t>((kx + K) + side * ((ky + K) + side * (kz + K)))];
    };
    for (int kz = -K; kz <= K; ++kz)
        for (int ky = -K; ky <= K; ++ky)
            for (int kx = -K; kx <= K; ++kx) slot(kx, ky, kz) = mode_gaussians(seed, kx, ky, kz);

    FourierField out(g);
    const double exponent = -(sigma + 1.5);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
        if (!inside_dealias_band(g, kx, ky, kz) || (kx == 0 && ky == 0 && kz == 0)) return;
        const double amp = std::pow(double(kx) * kx + double(ky) * ky + double(kz) * kz, 0.5 * exponent);
        const auto& a = slot(kx, ky, kz);
        const auto& b = slot(-kx, -ky, -kz);
        // Symmetrizing with the conjugate of the -k draw makes the field real.
        for (int c = 0; c < 3; ++c) out.comp[c][i] = 0.5 * amp * (a[c] + std::conj(b[c]));
    });
    return leray_project(out);
}

}  // namespace nselab
