#pragma once

#include "nselab/exponent.hpp"
#include "nselab/grid.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <new>
#include <vector>

namespace nselab {

using Complex = std::complex<double>;

/// Allocator returning SIMD-aligned storage so every array shares the
/// alignment of the arrays the FFT plans were built with.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
    T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{64})); }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{64}); }
    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealArray = std::vector<double, AlignedAllocator<double>>;
using SpectralArray = std::vector<Complex, AlignedAllocator<Complex>>;

/// Three real components sampled on the grid.
struct RealField {
    Grid grid;
    std::array<RealArray, 3> comp;

    explicit RealField(Grid g);
    /// Samples fn(x, y, z) at every grid point.
    static RealField from_function(Grid g, const std::function<std::array<double, 3>(double, double, double)>& fn);
};

struct SpectralScalar {
    Grid grid;
    SpectralArray data;
    explicit SpectralScalar(Grid g) : grid(g), data(g.spectral_size()) {}
};

/// Periodic real vector field as Fourier coefficients c_k with u(x) = sum_k c_k e^{ik.x}.
/// Only the kx >= 0 half is stored; the other half is the complex conjugate.
struct FourierField {
    Grid grid;
    std::array<SpectralArray, 3> comp;

    explicit FourierField(Grid g);

    FourierField& operator+=(const FourierField& o);
    FourierField& operator-=(const FourierField& o);
    FourierField& operator*=(double a);
    /// this += a * o
    FourierField& axpy(double a, const FourierField& o);
    friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
    friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
    friend FourierField operator*(double s, FourierField a) { return a *= s; }
};

/// d[i][j] = d_j f_i.
struct GradientTensor {
    Grid grid;
    std::array<std::array<SpectralArray, 3>, 3> d;
    explicit GradientTensor(Grid g);
};

// Transforms

FourierField to_fourier(const RealField& f);
RealField to_real(const FourierField& f);
RealArray to_real(const SpectralScalar& f);

// Differential operators

FourierField leray_project(const FourierField& f);
/// (I - P) f, the gradient part removed by the projection (mean mode excluded).
FourierField gradient_part(const FourierField& f);
GradientTensor gradient(const FourierField& f);
SpectralScalar divergence(const FourierField& f);
FourierField curl(const FourierField& f);

/// Zeroes every mode with some |k_i| above the 2/3-rule cutoff.
FourierField dealias(const FourierField& f);
/// Keeps modes with Euclidean |k| <= cutoff.
FourierField low_pass(const FourierField& f, double cutoff);
/// The same field on another grid: modes are copied where both grids hold them
/// below their Nyquist wavenumber and zero elsewhere.
FourierField resample(const FourierField& f, Grid target);

/// P[(u.grad)u] computed in rotational form omega x u from dealiased samples.
/// Throws std::invalid_argument if u is not divergence-free.
FourierField nonlinear_term(const FourierField& u);
/// Dealiased (U.grad)v without projection.
FourierField transport_term(const FourierField& transport, const FourierField& v);

// Inner products and norms

/// Real L^2 inner product over the box, by Parseval.
double inner_product(const FourierField& f, const FourierField& g);
/// Same for velocity gradients: sum_ij (d_j f_i, d_j g_i).
double gradient_inner_product(const FourierField& f, const FourierField& g);
double l2_norm_spectral(const FourierField& f);

/// Grid quadrature (sum |f|^q dV)^{1/q}; max |f| for q = inf. |f| is the Euclidean norm.
double lq_norm(const RealField& f, const Exponent& q);
double lq_norm(const FourierField& f, const Exponent& q);
/// lq_norm of the pointwise Frobenius norm of grad f.
double sobolev_seminorm(const FourierField& f, const Exponent& q);
double max_abs(const RealField& f);

/// Largest |k.c_k| relative to the largest |k||c_k|; 0 for the zero field.
double relative_divergence(const FourierField& f);

// Constructors

FourierField zero_field(Grid g);
/// (A sin x cos y, -A cos x sin y, 0): a two-dimensional Taylor-Green cell in the 3D box.
FourierField taylor_green(Grid g, double amplitude = 1.0);
/// (A sin x cos y cos z, -A cos x sin y cos z, 0): the three-dimensional Taylor-Green vortex.
FourierField taylor_green_3d(Grid g, double amplitude = 1.0);
/// (0, A sin x, 0): one divergence-free mode with wavevector (1,0,0).
FourierField single_mode(Grid g, double amplitude = 1.0);

/// Divergence-free Gaussian field with |c_k| ~ |k|^{-(sigma + 3/2)} on the
/// dealiased band. Mode coefficients depend only on (sigma, seed, k), so the
/// same low modes appear at every resolution.
FourierField random_rough_field(double sigma, std::uint64_t seed, Grid g);

}  // namespace nselab
