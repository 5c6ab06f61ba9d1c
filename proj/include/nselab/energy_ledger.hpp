#pragma once

#include "nselab/exponent_calculus.hpp"
#include "nselab/trajectory.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nselab::ledger {

/// 1/2 |u|^2 over the box.
double kinetic_energy(const FourierField& u);
/// |grad u|^2 over the box.
double enstrophy(const FourierField& u);

/// 1/2|u(t)|^2 + nu int_0^t |grad u|^2 - 1/2|u_0|^2 with trapezoid quadrature.
/// Negative values mean more energy left than viscosity accounts for.
/// Throws std::invalid_argument if t is not a snapshot time.
double balance_residual(const Trajectory& traj, double t);
/// Residual at every snapshot; exactly 0 at the first.
std::vector<double> balance_residuals(const Trajectory& traj);

/// int_0^T (P[(u.grad)u], u) dt by trapezoid.
double flux_integral(const Trajectory& traj);

/// Term-by-term split of int (N, (u_m)_eps) with N = P[(u.grad)u]:
///   (N, (u_m)_eps - (u)_eps) + (N, (u)_eps - u) + (N, u).
struct FluxSplit {
    double eps = 0.0;
    double cutoff = 0.0;  ///< spatial low-pass |k| <= cutoff defining u_m
    double mollified = 0.0;
    double lowpass_term = 0.0;
    double mollifier_term = 0.0;  ///< mollified-minus-unmollified gap
    double flux_term = 0.0;
};

/// cutoff defaults to 1/eps.
FluxSplit mollified_flux(const Trajectory& traj, double eps, std::optional<double> cutoff = std::nullopt);

/// Difference of the two sides of
///   (u(t0), phi(t0)) = (u0, phi(0)) + int_0^t0 (u, d_t phi) - nu (grad u, grad phi) - (N, phi)
/// with phi = (u)_eps. The nonlinear term is dropped for stokes trajectories.
/// Throws std::invalid_argument unless eps < t0 < T - eps, or for oseen trajectories.
double hopf_identity_residual(const Trajectory& traj, double eps, double t0);

/// (int_0^T |f(t)|_{L^q}^r dt)^{1/r} by trapezoid; max over snapshots for r = inf.
/// derivative_order 1 measures grad u.
double mixed_norm(const Trajectory& traj, const Exponent& r, const Exponent& q, int derivative_order = 0);

struct ProbeRow {
    exponents::TimeSpacePair pair;
    bool matches_closed_form = true;
    double transport_norm = 0.0;         ///< |(U.grad)w| in L^alpha(L^beta), base grid
    double pressure_norm = 0.0;          ///< |grad pi| in L^alpha(L^beta), base grid
    double transport_norm_refined = 0.0;  ///< same on the doubled grid
    double pressure_norm_refined = 0.0;
    bool finite = false;
    bool refinement_stable = false;  ///< both ratios <= 2 (0/0 counts as stable)
};

struct OseenProbe {
    Exponent r;
    Exponent s;
    int base_n = 0;
    bool refined = false;  ///< the doubled-grid run was made; refinement fields are 0 otherwise
    std::vector<ProbeRow> rows;
    std::vector<std::string> warnings;
};

/// Solves the adjoint Oseen problem with the given transport and a fixed smooth
/// forcing, then measures (U.grad)w and grad pi = (I - P)(U.grad)w at the forcing
/// pairs of the bootstrap trace for (r, s) (at most n_steps of them). The run is
/// repeated on a doubled grid with the transport resampled spectrally. The solver
/// step divides the transport spacing and is at most solver_dt; the transport is
/// linearly interpolated in between.
OseenProbe oseen_regularity_probe(const Trajectory& transport, const Exponent& r, const Exponent& s,
                                  std::size_t n_steps = 8, bool refine = true, double solver_dt = 1e-3);

/// Every k-th snapshot, k chosen as the smallest divisor of (size - 1) that
/// leaves at most max_snapshots snapshots.
Trajectory subsample(const Trajectory& traj, std::size_t max_snapshots);

/// Divergence-free forcing sin^2(pi t/T) (sin z, sin x, sin y) sampled at the transport's times.
Trajectory probe_forcing(const Trajectory& like);

struct NormTriple {
    Exponent r;
    Exponent q;
    int derivative_order = 0;
};

std::vector<NormTriple> default_norm_triples();
NormTriple parse_norm_triple(const std::string& r, const std::string& q, int k);

struct LedgerRow {
    double t, energy, enstrophy, dissipation, residual, flux;
};

struct NormEntry {
    NormTriple triple;
    double value = 0.0;
    bool finite = false;
    exponents::CriterionVerdict verdict;
};

struct LedgerReport {
    std::vector<LedgerRow> rows;
    std::vector<NormEntry> norms;
    double initial_energy = 0.0;
    double max_abs_residual = 0.0;
    double flux_integral = 0.0;
    std::vector<FluxSplit> flux_splits;
    std::optional<OseenProbe> probe;
};

LedgerReport criterion_report(const Trajectory& traj, const std::vector<NormTriple>& triples = default_norm_triples());

struct RefinementFlag {
    NormTriple triple;
    double coarse = 0.0;
    double fine = 0.0;
    double ratio = 0.0;
    bool grows = false;  ///< ratio > 2
};

/// Pairs the norm entries of two reports (coarse then fine) and flags growth.
std::vector<RefinementFlag> compare_reports(const LedgerReport& coarse, const LedgerReport& fine);

/// Header `t,energy,enstrophy,dissipation,residual,flux`, values with 17 significant digits.
void write_csv(std::ostream& out, const LedgerReport& report);
/// Aggregates as JSON; exponents as exact fraction strings.
void write_json(std::ostream& out, const LedgerReport& report);

}  // namespace nselab::ledger
