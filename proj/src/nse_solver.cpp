#include "nselab/nse_solver.hpp"

#include "nselab/parallel.hpp"
#include "nselab/snapshot_io.hpp"
#include "nselab/time_mollifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace nselab {

namespace {

constexpr double kDivergenceTolerance = 1e-10;

/// Per-mode viscous factors exp(-nu |k|^2 h) for a full step and a half step.
struct ViscousFactors {
    std::vector<double> full, half;

    ViscousFactors(const Grid& g, double nu, double h) : full(g.spectral_size()), half(g.spectral_size())
    {
        for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz, int) {
            const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            full[i] = std::exp(-nu * k2 * h);
            half[i] = std::exp(-nu * k2 * 0.5 * h);
        });
    }
};

void apply(const std::vector<double>& factor, FourierField& f)
{
    parallel_for(3, [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
            auto& a = f.comp[c];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] *= factor[i];
        }
    });
}

FourierField rhs(const FourierField& v, SolverMode mode, const FourierField* transport, const FourierField* forcing)
{
    FourierField r(v.grid);
    if (mode == SolverMode::NavierStokes) {
        r = nonlinear_term(v);
        r *= -1.0;
    } else if (mode == SolverMode::Oseen && transport != nullptr) {
        r = leray_project(transport_term(*transport, v));
        r *= -1.0;
    }
    if (forcing != nullptr) r += leray_project(*forcing);
    return r;
}

/// Stage fields at t, t + h/2, t + h.
using StageFields = std::array<const FourierField*, 3>;

FourierField if_rk4(const FourierField& u, const ViscousFactors& E, SolverMode mode, const StageFields& U,
                    const StageFields& f, double h)
{
    const FourierField k1 = rhs(u, mode, U[0], f[0]);

    FourierField s = u;
    s.axpy(0.5 * h, k1);
    apply(E.half, s);
    const FourierField k2 = rhs(s, mode, U[1], f[1]);

    FourierField uh = u;
    apply(E.half, uh);
    s = uh;
    s.axpy(0.5 * h, k2);
    const FourierField k3 = rhs(s, mode, U[1], f[1]);

    FourierField k3h = k3;
    apply(E.half, k3h);
    s = uh;
    apply(E.half, s);
    s.axpy(h, k3h);
    const FourierField k4 = rhs(s, mode, U[2], f[2]);

    // u+ = E u + h/6 (E k1 + 2 E_h (k2 + k3) + k4)
    FourierField e1 = k1;
    apply(E.full, e1);
    FourierField mid = k2;
    mid += k3;
    apply(E.half, mid);
    FourierField out = u;
    apply(E.full, out);
    out.axpy(h / 6.0, e1);
    out.axpy(h / 3.0, mid);
    out.axpy(h / 6.0, k4);
    return out;
}

bool all_finite(const FourierField& f)
{
    for (const auto& c : f.comp)
        for (const auto& z : c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void check_cfl(double dt, const FourierField& advecting, std::size_t step_index)
{
    const double limit = cfl_limit(advecting);
    if (dt > limit)
        throw CflViolation("CFL violation: dt = " + std::to_string(dt) + " exceeds " + std::to_string(limit),
                           step_index);
}

void check_companion(const Trajectory& t, const SolverConfig& config, const char* what)
{
    if (!(t.grid() == Grid(config.n))) throw std::invalid_argument(std::string(what) + " grid does not match config");
    if (t.size() < 2) throw std::invalid_argument(std::string(what) + " needs at least two snapshots");
    const double T = double(config.step_count()) * config.dt;
    const double tol = 1e-9 * std::max(1.0, T);
    if (std::abs(t.start_time()) > tol || std::abs(t.end_time() - T) > tol)
        throw std::invalid_argument(std::string(what) + " must span [0, t_end]");
}

}  // namespace

std::size_t SolverConfig::step_count() const
{
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    const double x = t_end / dt;
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 * std::max(1.0, x)) throw std::invalid_argument("t_end must be a multiple of dt");
    const auto steps = static_cast<std::size_t>(r);
    if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
    if (steps % static_cast<std::size_t>(snapshot_stride) != 0)
        throw std::invalid_argument("step count must be a multiple of snapshot_stride");
    return steps;
}

void SolverConfig::validate() const
{
    (void)Grid{n};
    if (!(viscosity > 0.0)) throw std::invalid_argument("viscosity must be positive");
    (void)step_count();
    static const std::array<const char*, 6> kinds = {"zero", "taylor-green", "taylor-green-3d",
                                                     "single-mode", "rough", "file"};
    if (std::find(kinds.begin(), kinds.end(), initial.kind) == kinds.end())
        throw std::invalid_argument("unknown initial condition '" + initial.kind + "'");
    if (initial.kind == "file" && initial.path.empty())
        throw std::invalid_argument("initial condition 'file' needs a path");
    if (initial.kind == "rough" && !(initial.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

FourierField initial_field(const SolverConfig& config)
{
    const Grid g(config.n);
    const auto& ic = config.initial;
    if (ic.kind == "zero") return zero_field(g);
    if (ic.kind == "taylor-green") return taylor_green(g, ic.amplitude);
    if (ic.kind == "taylor-green-3d") return taylor_green_3d(g, ic.amplitude);
    if (ic.kind == "single-mode") return single_mode(g, ic.amplitude);
    if (ic.kind == "rough") {
        FourierField u = random_rough_field(ic.sigma, ic.seed, g);
        u *= ic.amplitude;
        return u;
    }
    if (ic.kind == "file") {
        auto snap = read_snapshot(ic.path);
        if (!(snap.field.grid == g)) throw std::invalid_argument("snapshot file grid does not match n");
        if (relative_divergence(snap.field) > kDivergenceTolerance)
            throw std::invalid_argument("snapshot file is not divergence-free: " + ic.path);
        return std::move(snap.field);
    }
    throw std::invalid_argument("unknown initial condition '" + ic.kind + "'");
}

double cfl_limit(const FourierField& advecting)
{
    const double m = max_abs(to_real(advecting));
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * advecting.grid.spacing() / m;
}

FourierField step(const FourierField& u, double dt, double viscosity, SolverMode mode, const FourierField* transport,
                  const FourierField* forcing)
{
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (transport != nullptr && !(transport->grid == u.grid)) throw std::invalid_argument("transport grid mismatch");
    if (forcing != nullptr && !(forcing->grid == u.grid)) throw std::invalid_argument("forcing grid mismatch");
    if (mode == SolverMode::NavierStokes) check_cfl(dt, u, 0);
    if (mode == SolverMode::Oseen && transport != nullptr) check_cfl(dt, *transport, 0);
    const ViscousFactors E(u.grid, viscosity, dt);
    FourierField out = if_rk4(u, E, mode, {transport, transport, transport}, {forcing, forcing, forcing}, dt);
    if (!all_finite(out)) throw NumericalFailure("non-finite value", 0);
    return out;
}

Trajectory solve(const SolverConfig& config, const Trajectory* transport, const Trajectory* forcing)
{
    config.validate();
    return solve_from(config, initial_field(config), transport, forcing);
}

Trajectory solve_from(const SolverConfig& config, FourierField u0, const Trajectory* transport,
                      const Trajectory* forcing)
{
    config.validate();
    const Grid g(config.n);
    if (!(u0.grid == g)) throw std::invalid_argument("initial field grid does not match config");
    if (transport != nullptr) {
        if (config.mode != SolverMode::Oseen) throw std::invalid_argument("transport is only used in oseen mode");
        check_companion(*transport, config, "transport");
    }
    if (forcing != nullptr) check_companion(*forcing, config, "forcing");

    const std::size_t steps = config.step_count();
    const auto stride = static_cast<std::size_t>(config.snapshot_stride);
    const double h = config.dt;
    const ViscousFactors E(g, config.viscosity, h);

    // Linear interpolation never exceeds the endpoint maxima, so the
    // transport's CFL bound can be checked once over its snapshots.
    if (transport != nullptr)
        for (std::size_t i = 0; i < transport->size(); ++i) check_cfl(h, (*transport)[i].field, 0);

    Trajectory traj(g, config.viscosity, config.mode, config.provenance);
    traj.push_back(0.0, u0);
    FourierField u = std::move(u0);

    auto sample = [](const Trajectory* t, double time) -> std::optional<FourierField> {
        if (t == nullptr) return std::nullopt;
        return t->interpolate(time);
    };

    for (std::size_t k = 0; k < steps; ++k) {
        const double t0 = double(k) * h;
        const double t1 = double(k + 1) * h;
        const double tm = 0.5 * (t0 + t1);
        if (config.mode == SolverMode::NavierStokes) check_cfl(h, u, k);
        const std::array<std::optional<FourierField>, 3> Us{sample(transport, t0), sample(transport, tm),
                                                            sample(transport, t1)};
        const std::array<std::optional<FourierField>, 3> fs{sample(forcing, t0), sample(forcing, tm),
                                                            sample(forcing, t1)};
        StageFields U{}, f{};
        for (int s = 0; s < 3; ++s) {
            U[s] = Us[s] ? &*Us[s] : nullptr;
            f[s] = fs[s] ? &*fs[s] : nullptr;
        }
        u = if_rk4(u, E, config.mode, U, f, h);
        if (!all_finite(u)) throw NumericalFailure("non-finite value", k + 1);
        if ((k + 1) % stride == 0) traj.push_back(t1, u);
    }
    return traj;
}

Trajectory reverse(const Trajectory& traj)
{
    Trajectory out(traj.grid(), traj.viscosity(), traj.mode(), traj.provenance());
    const std::size_t N = traj.size();
    // On a uniform grid T - t_{N-1-i} = t_i, so the original times are reused.
    for (std::size_t i = 0; i < N; ++i) out.push_back(traj[i].time, traj[N - 1 - i].field);
    return out;
}

Trajectory solve_final_value(const SolverConfig& config, const Trajectory& transport, const Trajectory& forcing)
{
    SolverConfig cfg = config;
    cfg.mode = SolverMode::Oseen;
    cfg.validate();
    check_companion(transport, cfg, "transport");
    check_companion(forcing, cfg, "forcing");
    if (!(transport.grid() == forcing.grid())) throw std::invalid_argument("transport and forcing grids differ");

    auto negate = [](const FourierField& f) { return -1.0 * f; };
    const Trajectory rt = map_fields(reverse(transport), negate);
    const Trajectory rf = map_fields(reverse(forcing), negate);
    Trajectory w = solve_from(cfg, zero_field(Grid(cfg.n)), &rt, &rf);
    return reverse(w);
}

Trajectory spacetime_smooth(const Trajectory& traj, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("smoothing width must be positive");
    const double cutoff = 1.0 / eps;
    if (cutoff > traj.grid().n() / 2)
        throw std::invalid_argument("smoothing width " + std::to_string(eps) + " is below the grid resolution");
    auto smoothed = mollifier::mollify(traj, eps).trajectory;
    Trajectory out = map_fields(smoothed, [cutoff](const FourierField& f) { return low_pass(f, cutoff); });
    out.set_provenance(traj.provenance() + (traj.provenance().empty() ? "" : "; ") + "smoothed eps=" +
                       std::to_string(eps));
    return out;
}

}  // namespace nselab
