#pragma once

#include "nselab/spectral_field.hpp"

#include <fftw3.h>

namespace nselab::detail {

/// FFTW r2c/c2r plans for one grid size, shared by all fields of that size.
/// Plans are built once with FFTW_ESTIMATE, which makes the chosen algorithm
/// (and therefore every bit of output) independent of timing.
class FftPlans {
public:
    static const FftPlans& for_grid(const Grid& g);

    /// Unnormalized transform followed by division by n^3.
    void forward(const double* in, Complex* out) const;
    /// Synthesis u(x) = sum_k c_k e^{ik.x}. Does not modify `in`.
    void inverse(const Complex* in, double* out) const;

    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;
    ~FftPlans();

private:
    explicit FftPlans(const Grid& g);

    Grid grid_;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

}  // namespace nselab::detail
