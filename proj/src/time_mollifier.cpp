#include "nselab/time_mollifier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nselab::mollifier {

namespace {

/// Trapezoid end factor for sample j of a window [0, last].
double end_factor(std::size_t j, std::size_t last) { return (j == 0 || j == last) ? 0.5 : 1.0; }

void require_window(const Trajectory& traj, double eps)
{
    if (traj.size() < 2) throw std::invalid_argument("mollification needs at least two snapshots");
    const double T = traj.end_time() - traj.start_time();
    if (!(eps > 0.0) || !(eps < T)) throw std::invalid_argument("mollifier width must satisfy 0 < eps < T");
}

/// sum_j c_j w(i - j) phi_j over the kernel support inside [0, window_end].
template <class WeightFn>
FourierField convolve(const Trajectory& traj, const DiscreteMollifier& k, std::size_t i, std::size_t window_end,
                      WeightFn&& weight)
{
    FourierField out(traj.grid());
    const long L = k.half_width();
    const long lo = std::max<long>(0, static_cast<long>(i) - L);
    const long hi = std::min<long>(static_cast<long>(window_end), static_cast<long>(i) + L);
    for (long j = lo; j <= hi; ++j) {
        const double w = end_factor(static_cast<std::size_t>(j), window_end) * weight(static_cast<int>(long(i) - j));
        if (w != 0.0) out.axpy(w, traj[static_cast<std::size_t>(j)].field);
    }
    return out;
}

/// Banded Gram matrix G[i][m + L] = <u_i, u_{i+m}> for |m| <= L.
template <class Product>
std::vector<std::vector<double>> banded_gram(const Trajectory& traj, int L, Product&& product)
{
    const std::size_t N = traj.size();
    std::vector<std::vector<double>> G(N, std::vector<double>(2 * L + 1, 0.0));
    for (std::size_t i = 0; i < N; ++i) {
        for (int m = 0; m <= L; ++m) {
            const std::size_t j = i + static_cast<std::size_t>(m);
            if (j >= N) break;
            const double v = product(traj[i].field, traj[j].field);
            G[i][m + L] = v;
            G[j][-m + L] = v;
        }
    }
    return G;
}

}  // namespace

MollifierKernel::MollifierKernel(double epsilon) : eps_(epsilon)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("mollifier width must be positive");
}

double MollifierKernel::bump(double t)
{
    const double a = 1.0 - t * t;
    return a <= 0.0 ? 0.0 : std::exp(-1.0 / a);
}

double MollifierKernel::normalization()
{
    static const double C = [] {
        using boost::math::quadrature::gauss_kronrod;
        const double integral = gauss_kronrod<double, 61>::integrate(bump, -1.0, 1.0, 20, 1e-15);
        return 1.0 / integral;
    }();
    return C;
}

double MollifierKernel::operator()(double t) const { return normalization() * bump(t / eps_) / eps_; }

double MollifierKernel::derivative(double t) const
{
    const double s = t / eps_;
    const double a = 1.0 - s * s;
    if (a <= 0.0) return 0.0;
    // d/ds exp(-1/(1-s^2)) = -2s/(1-s^2)^2 exp(-1/(1-s^2))
    return normalization() * (-2.0 * s / (a * a)) * std::exp(-1.0 / a) / (eps_ * eps_);
}

double MollifierKernel::mass() const
{
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate([this](double t) { return (*this)(t); }, -eps_, eps_, 20, 1e-15);
}

DiscreteMollifier::DiscreteMollifier(double epsilon, double dt) : kernel_(epsilon), dt_(dt)
{
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (epsilon <= 2.0 * dt)
        throw std::invalid_argument("mollifier under-resolved: eps = " + std::to_string(epsilon) +
                                    " <= 2 dt = " + std::to_string(2.0 * dt));
    half_width_ = static_cast<int>(std::floor(epsilon / dt));
    weights_.resize(2 * half_width_ + 1);
    dweights_.resize(2 * half_width_ + 1);
    double mass = 0.0;
    for (int m = -half_width_; m <= half_width_; ++m) {
        const double w = dt * kernel_(m * dt);
        weights_[m + half_width_] = w;
        mass += w;
    }
    discrete_mass_ = mass;
    for (int m = -half_width_; m <= half_width_; ++m) {
        weights_[m + half_width_] /= mass;
        dweights_[m + half_width_] = dt * kernel_.derivative(m * dt) / mass;
    }
    // Exact evenness of the sampled weights.
    for (int m = 1; m <= half_width_; ++m) {
        weights_[half_width_ - m] = weights_[half_width_ + m];
        dweights_[half_width_ - m] = -dweights_[half_width_ + m];
    }
    dweights_[half_width_] = 0.0;
}

double DiscreteMollifier::weight(int m) const
{
    return std::abs(m) > half_width_ ? 0.0 : weights_[m + half_width_];
}

double DiscreteMollifier::derivative_weight(int m) const
{
    return std::abs(m) > half_width_ ? 0.0 : dweights_[m + half_width_];
}

FourierField mollify_at(const Trajectory& traj, const DiscreteMollifier& k, std::size_t i, std::size_t window_end)
{
    return convolve(traj, k, i, window_end, [&k](int m) { return k.weight(m); });
}

FourierField mollified_derivative_at(const Trajectory& traj, const DiscreteMollifier& k, std::size_t i,
                                     std::size_t window_end)
{
    return convolve(traj, k, i, window_end, [&k](int m) { return k.derivative_weight(m); });
}

Mollified mollify(const Trajectory& traj, double eps)
{
    require_window(traj, eps);
    const DiscreteMollifier k(eps, traj.dt());
    const std::size_t last = traj.size() - 1;
    Mollified out{Trajectory(traj.grid(), traj.viscosity(), traj.mode(), traj.provenance()), {}};
    const std::size_t L = static_cast<std::size_t>(k.half_width());
    for (std::size_t i = 0; i <= last; ++i) {
        out.trajectory.push_back(traj[i].time, mollify_at(traj, k, i, last));
        out.near_boundary.push_back(i < L || i + L > last);
    }
    return out;
}

double mollifier_energy_pairing(const Trajectory& traj, double eps, double t)
{
    require_window(traj, eps);
    if (!(t - traj.start_time() > eps) || !(traj.end_time() - t > eps))
        throw std::invalid_argument("pairing time must lie in (eps, T - eps)");
    const std::size_t i = traj.index_of(t);
    const DiscreteMollifier k(eps, traj.dt());
    const FourierField m = mollify_at(traj, k, i, traj.size() - 1);
    const auto& u = traj[i].field;
    return inner_product(u, m) - 0.5 * inner_product(u, u);
}

double endpoint_energy_pairing(const Trajectory& traj, double eps, double t0)
{
    require_window(traj, eps);
    if (!(t0 - traj.start_time() > eps)) throw std::invalid_argument("endpoint pairing requires eps < t0");
    const std::size_t i = traj.index_of(t0);
    const DiscreteMollifier k(eps, traj.dt());
    const FourierField m = mollify_at(traj, k, i, i);
    const auto& u = traj[i].field;
    return inner_product(u, m) - 0.5 * inner_product(u, u);
}

double even_kernel_cancellation(const Trajectory& traj, double eps)
{
    if (traj.size() < 2) throw std::invalid_argument("even-kernel cancellation needs at least two snapshots");
    const double T = traj.end_time() - traj.start_time();
    if (!(eps < T / 4)) throw std::invalid_argument("even-kernel cancellation requires eps < T/4");
    const DiscreteMollifier k(eps, traj.dt());
    const int L = k.half_width();
    const auto G = banded_gram(traj, L, [](const FourierField& a, const FourierField& b) { return inner_product(a, b); });
    const std::size_t last = traj.size() - 1;
    const double dt = traj.dt();
    double total = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
        double s = 0.0;
        for (int m = -L; m <= L; ++m) {
            const long j = static_cast<long>(i) - m;
            if (j < 0 || j > static_cast<long>(last)) continue;
            s += end_factor(static_cast<std::size_t>(j), last) * k.derivative_weight(m) * G[i][-m + L];
        }
        total += end_factor(i, last) * dt * s;
    }
    return total;
}

double gradient_mollifier_gap(const Trajectory& traj, double eps)
{
    require_window(traj, eps);
    const DiscreteMollifier k(eps, traj.dt());
    const int L = k.half_width();
    const auto G = banded_gram(traj, L,
                               [](const FourierField& a, const FourierField& b) { return gradient_inner_product(a, b); });
    const std::size_t last = traj.size() - 1;
    const double dt = traj.dt();
    double gap = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
        double s = 0.0;
        for (int m = -L; m <= L; ++m) {
            const long j = static_cast<long>(i) - m;
            if (j < 0 || j > static_cast<long>(last)) continue;
            s += end_factor(static_cast<std::size_t>(j), last) * k.weight(m) * G[i][-m + L];
        }
        gap += end_factor(i, last) * dt * (s - G[i][L]);
    }
    return gap;
}

}  // namespace nselab::mollifier
