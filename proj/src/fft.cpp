#include "fft.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace nselab::detail {

namespace {
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
}  // namespace

const FftPlans& FftPlans::for_grid(const Grid& g)
{
    static std::map<int, std::unique_ptr<FftPlans>> cache;
    std::lock_guard lock(planner_mutex());
    auto& slot = cache[g.n()];
    if (!slot) slot.reset(new FftPlans(g));
    return *slot;
}

FftPlans::FftPlans(const Grid& g) : grid_(g)
{
    const int n = g.n();
    RealArray real(g.real_size());
    SpectralArray spec(g.spectral_size());
    auto* r = real.data();
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    // Row-major (z, y, x) dims make x the contiguous axis.
    forward_ = fftw_plan_dft_r2c_3d(n, n, n, r, c, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_3d(n, n, n, c, r, FFTW_ESTIMATE);
    if (!forward_ || !inverse_) throw std::runtime_error("FFTW planning failed for n = " + std::to_string(n));
}

FftPlans::~FftPlans()
{
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
}

void FftPlans::forward(const double* in, Complex* out) const
{
    // Out-of-place r2c leaves the input untouched.
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / static_cast<double>(grid_.real_size());
    const std::size_t m = grid_.spectral_size();
    for (std::size_t i = 0; i < m; ++i) out[i] *= scale;
}

void FftPlans::inverse(const Complex* in, double* out) const
{
    // c2r overwrites its input, so work on a copy.
    SpectralArray scratch(in, in + grid_.spectral_size());
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace nselab::detail
