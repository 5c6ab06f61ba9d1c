#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nselab {

/// Uniform n^3 grid on the periodic box [0, 2pi)^3.
///
/// Physical samples are stored x-fastest: index = x + n*(y + n*z).
/// Spectral coefficients use the real-to-complex half layout with the x
/// wavenumber halved: index = kx + (n/2+1)*(ky + n*kz), kx in [0, n/2].
class Grid {
public:
    explicit Grid(int n) : n_(n)
    {
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n));
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] static constexpr double box_length() { return 2.0 * std::numbers::pi; }
    [[nodiscard]] double spacing() const { return box_length() / n_; }
    [[nodiscard]] double cell_volume() const { return std::pow(spacing(), 3); }
    [[nodiscard]] static double volume() { return std::pow(box_length(), 3); }

    [[nodiscard]] std::size_t real_size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    [[nodiscard]] int half_x() const { return n_ / 2 + 1; }
    [[nodiscard]] std::size_t spectral_size() const { return static_cast<std::size_t>(half_x()) * n_ * n_; }

    /// Signed integer wavenumber of storage index i along a full axis (y or z).
    [[nodiscard]] int signed_mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
    /// Wavenumber used for differentiation: the Nyquist mode is treated as 0.
    [[nodiscard]] double derivative_wavenumber(int signed_k) const
    {
        return (signed_k == n_ / 2 || signed_k == -n_ / 2) ? 0.0 : static_cast<double>(signed_k);
    }
    /// Largest |k_i| kept by the 2/3 rule; 3K < n so quadratic products do not alias into kept modes.
    [[nodiscard]] int dealias_cutoff() const { return (n_ - 1) / 3; }

    /// Multiplicity of a stored half-layout mode in the full spectrum.
    [[nodiscard]] double hermitian_weight(int kx_index) const
    {
        return (kx_index == 0 || kx_index == n_ / 2) ? 1.0 : 2.0;
    }

    friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

private:
    int n_;
};

/// Visits every stored spectral mode as fn(index, kx, ky, kz, kx_index) with signed integer modes.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn)
{
    const int n = g.n();
    const int hx = g.half_x();
    std::size_t idx = 0;
    for (int iz = 0; iz < n; ++iz) {
        const int kz = g.signed_mode(iz);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = g.signed_mode(iy);
            for (int ix = 0; ix < hx; ++ix, ++idx) fn(idx, ix, ky, kz, ix);
        }
    }
}

}  // namespace nselab
