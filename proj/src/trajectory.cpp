#include "nselab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nselab {

std::string to_string(SolverMode m)
{
    switch (m) {
    case SolverMode::NavierStokes: return "navier-stokes";
    case SolverMode::Stokes: return "stokes";
    case SolverMode::Oseen: return "oseen";
    }
    return "?";
}

SolverMode parse_solver_mode(std::string_view text)
{
    if (text == "navier-stokes") return SolverMode::NavierStokes;
    if (text == "stokes") return SolverMode::Stokes;
    if (text == "oseen") return SolverMode::Oseen;
    throw std::invalid_argument("unknown solver mode '" + std::string(text) + "'");
}

Trajectory::Trajectory(Grid grid, double viscosity, SolverMode mode, std::string provenance)
    : grid_(grid), viscosity_(viscosity), mode_(mode), provenance_(std::move(provenance))
{
    if (!(viscosity >= 0.0)) throw std::invalid_argument("viscosity must be non-negative");
}

void Trajectory::push_back(double time, FourierField field)
{
    if (!(field.grid == grid_)) throw std::invalid_argument("snapshot grid does not match trajectory grid");
    if (!snapshots_.empty()) {
        if (!(time > snapshots_.back().time)) throw std::invalid_argument("snapshot times must increase strictly");
        if (snapshots_.size() >= 2) {
            const double step = snapshots_[1].time - snapshots_[0].time;
            const double expected = snapshots_[0].time + static_cast<double>(snapshots_.size()) * step;
            if (std::abs(time - expected) > 1e-12 * std::max(1.0, std::abs(expected)) + 1e-9 * step)
                throw std::invalid_argument("snapshot times must be uniformly spaced");
        }
    }
    snapshots_.push_back({time, std::move(field)});
}

double Trajectory::dt() const { return snapshots_.size() < 2 ? 0.0 : snapshots_[1].time - snapshots_[0].time; }

std::size_t Trajectory::index_of(double t) const
{
    if (snapshots_.empty()) throw std::invalid_argument("empty trajectory");
    if (snapshots_.size() == 1) {
        if (std::abs(t - snapshots_[0].time) <= 1e-12) return 0;
        throw std::invalid_argument("time " + std::to_string(t) + " is not a snapshot time");
    }
    const double h = dt();
    const double x = (t - start_time()) / h;
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-6 || r < 0 || r >= static_cast<double>(snapshots_.size()))
        throw std::invalid_argument("time " + std::to_string(t) + " is not a snapshot time");
    return static_cast<std::size_t>(r);
}

FourierField Trajectory::interpolate(double t) const
{
    if (snapshots_.empty()) throw std::invalid_argument("empty trajectory");
    const double h = dt();
    if (snapshots_.size() == 1 || h == 0.0) {
        if (std::abs(t - start_time()) <= 1e-12) return snapshots_[0].field;
        throw std::invalid_argument("interpolation time outside a single-snapshot trajectory");
    }
    const double x = (t - start_time()) / h;
    const double last = static_cast<double>(snapshots_.size() - 1);
    if (x < -1e-9 || x > last + 1e-9) throw std::invalid_argument("interpolation time outside trajectory span");
    const double xc = std::clamp(x, 0.0, last);
    auto i = static_cast<std::size_t>(std::floor(xc));
    if (i >= snapshots_.size() - 1) i = snapshots_.size() - 2;
    const double w = xc - static_cast<double>(i);
    if (w == 0.0) return snapshots_[i].field;
    if (w == 1.0) return snapshots_[i + 1].field;
    FourierField out = snapshots_[i].field;
    out *= (1.0 - w);
    out.axpy(w, snapshots_[i + 1].field);
    return out;
}

}  // namespace nselab
