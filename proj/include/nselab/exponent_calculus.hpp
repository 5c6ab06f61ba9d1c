#pragma once

// Exact arithmetic over the Lebesgue/Sobolev exponents that appear in
// energy-equality criteria for 3D incompressible flow.

#include "nselab/exponent.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nselab::exponents {

/// 1/q + 1/q' = 1. conjugate(1) = inf and conjugate(inf) = 1.
Exponent holder_conjugate(const Exponent& q);

struct SobolevEmbedding {
    Exponent value;
    /// Set at q = 3, where W^{1,3} embeds into every finite L^r but not into L^inf.
    bool finite_exponents_only = false;
};

/// q* = 3q/(3-q) for q < 3, inf for q >= 3.
SobolevEmbedding sobolev_exponent(const Exponent& q);

/// 1/p_* = 1/p - 1/2 for p < 2, inf for p >= 2. Throws std::domain_error for p = 1.
Exponent star_exponent(const Exponent& p);

enum class GradientCase { I, II, III, None };
std::string to_string(GradientCase c);

/// Case of the gradient-ranges criterion that owns q: (3/2, 9/5), [9/5, 3], (3, inf].
GradientCase gradient_case(const Exponent& q);

/// Minimal time exponent p such that grad u in L^p(L^q) gives energy equality.
/// Throws std::domain_error for q <= 3/2.
Exponent gradient_ranges_time_exponent(const Exponent& q);

/// L^r(0,T; W^{k,q}) with k in {0, 1}. k = 1 means the space describes grad u.
struct MixedNormSpace {
    Exponent time_exp;
    Exponent space_exp;
    int derivative_order = 0;

    static MixedNormSpace velocity(Exponent r, Exponent s) { return {std::move(r), std::move(s), 0}; }
    static MixedNormSpace gradient(Exponent p, Exponent q) { return {std::move(p), std::move(q), 1}; }
    friend bool operator==(const MixedNormSpace&, const MixedNormSpace&) = default;
};

enum class ScalingKind { ParabolicVelocity, ParabolicGradient, Shinbrot };

/// 2/r+3/s, 2/p+3/q or 2/r+2/s.
Rational scaling_weight(const MixedNormSpace& space, ScalingKind kind);

/// Exponent of lambda in the norm of u_{lambda,alpha}(t,x) = lambda^alpha u(lambda^{alpha+1} t, lambda x):
/// alpha - 3/s - (alpha+1)/r.
Rational general_scaling_exponent(const Exponent& r, const Exponent& s, const Rational& alpha);

struct CriterionCheck {
    bool applicable = false;
    bool satisfied = false;
    Rational weight;     ///< achieved weight
    Rational threshold;  ///< criterion threshold
    Rational margin;     ///< threshold - weight; >= 0 when the weight condition holds
};

struct CriterionVerdict {
    MixedNormSpace space;
    /// For gradient spaces: the velocity space (p, q*) obtained by Sobolev embedding.
    std::optional<MixedNormSpace> embedded_velocity;
    bool embedding_finite_only = false;

    // Velocity criteria; evaluated on the embedded space for gradient inputs.
    CriterionCheck serrin;                    ///< 2/r+3/s <= 1, s > 3
    CriterionCheck shinbrot;                  ///< 2/r+2/s <= 1, s >= 4
    CriterionCheck leray_hopf_interpolation;  ///< 2/r+3/s <= 3/2
    CriterionCheck leslie_shvydkoy;           ///< 1/r+1/s <= 1/2, 3 <= r <= s

    // Gradient criteria; not applicable to velocity spaces.
    CriterionCheck gradient_regularity;  ///< 2/p+3/q <= 2, q > 3/2
    GradientCase gradient_case = GradientCase::None;
    /// Weight is 1/p, threshold 1/p_min(q).
    CriterionCheck gradient_ranges;
};

CriterionVerdict classify(const MixedNormSpace& space);

enum class ProofCase { I, II1, II2, III };
std::string to_string(ProofCase c);
ProofCase parse_proof_case(std::string_view text);

/// Interpolation parameter used in the flux estimate of each range:
///   I   (3/2, 9/5):  (3-2q)/(3(q-2))
///   II1 [9/5, 12/5): (5q-9)/(5q-6)
///   II2 [12/5, 3]:   (5q-12)/(5q-6)
///   III (3, inf):    1 - 1/q
/// Throws std::domain_error when q is outside the case range.
Rational proof_case_theta(ProofCase c, const Exponent& q);

struct TimeSpacePair {
    Exponent time;
    Exponent space;
    friend bool operator==(const TimeSpacePair&, const TimeSpacePair&) = default;
};

struct BootstrapStep {
    TimeSpacePair forcing;        ///< Hoelder combination of transport (r,s) with the gradient pair
    TimeSpacePair next_gradient;  ///< (star(forcing.time), forcing.space)
    /// Some produced exponent reached 1 or inf, so the iteration cannot continue.
    bool exits_open_range = false;
};

/// One application of maximal regularity plus the mixed-derivative embedding.
/// Returns nullopt if a forcing exponent would drop below 1.
/// Throws std::domain_error if an input exponent is not in (1, inf].
std::optional<BootstrapStep> bootstrap_step(const TimeSpacePair& grad, const Exponent& r, const Exponent& s);

enum class StopReason { TargetReached, ExponentLeftRange, MaxSteps };
std::string to_string(StopReason r);

/// gradient_seq[0] = (2,2) is the energy-space starting point. forcing_seq[i]
/// combines (r,s) with gradient_seq[i], and gradient_seq[i+1] follows from it.
struct BootstrapTrace {
    Exponent r;
    Exponent s;
    std::vector<TimeSpacePair> gradient_seq;
    std::vector<TimeSpacePair> forcing_seq;
    StopReason stop_reason = StopReason::MaxSteps;
};

inline constexpr int kDefaultBootstrapSteps = 64;

/// Iterates bootstrap_step from (2,2) until the forcing space exponent reaches
/// the conjugate s' of s. Throws std::domain_error if 1/r + 1/s > 1/2.
BootstrapTrace bootstrap_trace(const Exponent& r, const Exponent& s, int max_steps = kDefaultBootstrapSteps);

/// Forcing pair after n steps for 1/r + 1/s = 1/2: (s/(s-n), 2s/(2n+s)).
TimeSpacePair shinbrot_forcing_closed_form(const Rational& s, long n);

struct Endgame {
    Rational s;
    long steps = 0;          ///< N = [s/2] - 1
    Rational theta;          ///< (2[s/2] - s + 2)/2, equal to 1 for even s
    bool even_arrival = false;
    TimeSpacePair lower;     ///< forcing pair after N steps
    TimeSpacePair upper;     ///< forcing pair after N+1 steps
    MixedNormSpace target;   ///< L^{2s/(2+s)}(L^{s/(s-1)})
};

/// Throws std::domain_error for s <= 4 or s = inf.
Endgame shinbrot_endgame(const Exponent& s);

enum class RegionLabel { GradientRegularity, CaseI, CaseII, CaseIII, None };
std::string to_string(RegionLabel label);

struct RegionRow {
    Rational inv_q;
    Rational inv_p;
    RegionLabel label;
};

/// Strongest criterion satisfied by grad u in L^p(L^q).
RegionLabel region_label(const Rational& inv_q, const Rational& inv_p);

/// Landmark (1/q, 1/p) points that are always appended to the diagram.
std::vector<std::pair<Rational, Rational>> region_landmarks();

/// Uniform grid (i/(n+1), j/(n+1)) for i, j = 1..n, followed by the landmark rows.
std::vector<RegionRow> region_diagram(int points_per_axis);

/// CSV with header `inv_q,inv_p,region`, exponents as exact fractions.
void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows);

}  // namespace nselab::exponents
