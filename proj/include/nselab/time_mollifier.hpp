#pragma once

#include "nselab/trajectory.hpp"

#include <vector>

namespace nselab::mollifier {

/// k_eps(t) = k(t/eps)/eps with k(t) = C exp(-1/(1-t^2)) on (-1, 1).
class MollifierKernel {
public:
    explicit MollifierKernel(double epsilon);

    [[nodiscard]] double epsilon() const { return eps_; }
    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double derivative(double t) const;
    /// Integral of k_eps over the real line by adaptive Gauss-Kronrod quadrature.
    [[nodiscard]] double mass() const;

    /// C such that the unit-width profile integrates to one.
    static double normalization();
    /// Unnormalized bump exp(-1/(1-t^2)).
    static double bump(double t);

private:
    double eps_;
};

/// Discrete time-convolution weights on a uniform grid of step dt.
///
/// The sampled kernel is rescaled to unit discrete mass, so constants are
/// reproduced exactly away from the ends of the time window.
class DiscreteMollifier {
public:
    /// Throws std::invalid_argument if eps <= 2 dt.
    DiscreteMollifier(double epsilon, double dt);

    [[nodiscard]] const MollifierKernel& kernel() const { return kernel_; }
    [[nodiscard]] int half_width() const { return half_width_; }
    /// Weight applied to the sample at offset m = i - j (trapezoid factor excluded).
    [[nodiscard]] double weight(int m) const;
    [[nodiscard]] double derivative_weight(int m) const;
    [[nodiscard]] double discrete_mass() const { return discrete_mass_; }

private:
    MollifierKernel kernel_;
    double dt_;
    int half_width_;
    double discrete_mass_;
    std::vector<double> weights_;
    std::vector<double> dweights_;
};

struct Mollified {
    Trajectory trajectory;
    /// True where the kernel support crosses an end of the window (value uses partial mass).
    std::vector<bool> near_boundary;
};

/// (Phi)_eps(t) = int_0^T k_eps(t - tau) Phi(tau) dtau by trapezoid quadrature on the
/// trajectory's own grid. Throws if eps <= 2 dt or eps >= T.
Mollified mollify(const Trajectory& traj, double eps);

/// Mollification restricted to the window [t_0, t_last] with last = window_end index.
FourierField mollify_at(const Trajectory& traj, const DiscreteMollifier& k, std::size_t i, std::size_t window_end);
/// d/dt of the mollified field at snapshot i, using the analytic kernel derivative.
FourierField mollified_derivative_at(const Trajectory& traj, const DiscreteMollifier& k, std::size_t i,
                                     std::size_t window_end);

/// (u(t), (u)_eps(t)) - |u(t)|^2/2 at an interior time t in (eps, T - eps).
double mollifier_energy_pairing(const Trajectory& traj, double eps, double t);

/// Same pairing with the mollification taken over [0, t0], so the kernel only
/// sees half its mass at t0. The result is O(eps) for Lipschitz trajectories.
double endpoint_energy_pairing(const Trajectory& traj, double eps, double t0);

/// int_0^T (u, d/dt (u)_eps) dt. Vanishes for an even kernel; throws for fewer
/// than two snapshots or eps >= T/4.
double even_kernel_cancellation(const Trajectory& traj, double eps);

/// int_0^T (grad u, (grad u)_eps) dt - int_0^T |grad u|^2 dt.
double gradient_mollifier_gap(const Trajectory& traj, double eps);

}  // namespace nselab::mollifier
