#include "nselab/exponent_calculus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace nselab::exponents {

using nselab::to_string;

namespace {

const Rational kHalf(1, 2);

Rational floor_of(const Rational& x)
{
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(x);
    cpp_int den = boost::multiprecision::denominator(x);
    cpp_int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return Rational(q);
}

bool strictly_inside_open_range(const Exponent& e) { return !e.is_infinite() && e.reciprocal() < 1; }

void require_bootstrap_input(const Exponent& e, const char* name)
{
    if (e.reciprocal() >= 1)
        throw std::domain_error(std::string("bootstrap exponent ") + name + " must lie in (1, inf], got " + e.str());
}

CriterionCheck weight_check(Rational weight, Rational threshold, bool extra_condition)
{
    CriterionCheck c;
    c.applicable = true;
    c.margin = threshold - weight;
    c.weight = std::move(weight);
    c.threshold = std::move(threshold);
    c.satisfied = extra_condition && c.margin >= 0;
    return c;
}

void fill_velocity_checks(CriterionVerdict& v, const Exponent& r, const Exponent& s)
{
    const Rational& ir = r.reciprocal();
    const Rational& is = s.reciprocal();
    v.serrin = weight_check(2 * ir + 3 * is, Rational(1), s > Exponent(3));
    v.shinbrot = weight_check(2 * ir + 2 * is, Rational(1), s >= Exponent(4));
    v.leray_hopf_interpolation = weight_check(2 * ir + 3 * is, Rational(3, 2), true);
    v.leslie_shvydkoy = weight_check(ir + is, kHalf, r >= Exponent(3) && r <= s);
}

}  // namespace

Exponent holder_conjugate(const Exponent& q) { return Exponent::from_reciprocal(1 - q.reciprocal()); }

SobolevEmbedding sobolev_exponent(const Exponent& q)
{
    const Rational inv = q.reciprocal() - Rational(1, 3);
    if (inv <= 0) return {Exponent::infinity(), inv == 0};
    return {Exponent::from_reciprocal(inv), false};
}

Exponent star_exponent(const Exponent& p)
{
    if (p.reciprocal() >= 1) throw std::domain_error("star exponent requires p > 1, got " + p.str());
    const Rational inv = p.reciprocal() - kHalf;
    return inv <= 0 ? Exponent::infinity() : Exponent::from_reciprocal(inv);
}

std::string to_string(GradientCase c)
{
    switch (c) {
    case GradientCase::I: return "i";
    case GradientCase::II: return "ii";
    case GradientCase::III: return "iii";
    case GradientCase::None: return "none";
    }
    return "none";
}

GradientCase gradient_case(const Exponent& q)
{
    if (q <= Exponent(Rational(3, 2))) return GradientCase::None;
    if (q < Exponent(Rational(9, 5))) return GradientCase::I;
    if (q <= Exponent(3)) return GradientCase::II;
    return GradientCase::III;
}

Exponent gradient_ranges_time_exponent(const Exponent& q)
{
    const Rational& iq = q.reciprocal();
    // 1/p written in terms of 1/q for each case.
    switch (gradient_case(q)) {
    case GradientCase::I: return Exponent::from_reciprocal(2 - 3 * iq);                 // (2q-3)/q
    case GradientCase::II: return Exponent::from_reciprocal(1 - Rational(6, 5) * iq);   // (5q-6)/(5q)
    case GradientCase::III: return Exponent::from_reciprocal(1 / (1 + 2 * iq));         // q/(q+2)
    case GradientCase::None: break;
    }
    throw std::domain_error("gradient-ranges criterion requires q > 3/2, got " + q.str());
}

Rational scaling_weight(const MixedNormSpace& space, ScalingKind kind)
{
    const Rational& it = space.time_exp.reciprocal();
    const Rational& ix = space.space_exp.reciprocal();
    switch (kind) {
    case ScalingKind::ParabolicVelocity: return 2 * it + 3 * ix;
    case ScalingKind::ParabolicGradient: return 2 * it + 3 * ix;
    case ScalingKind::Shinbrot: return 2 * it + 2 * ix;
    }
    return 0;
}

Rational general_scaling_exponent(const Exponent& r, const Exponent& s, const Rational& alpha)
{
    return alpha - 3 * s.reciprocal() - (alpha + 1) * r.reciprocal();
}

CriterionVerdict classify(const MixedNormSpace& space)
{
    CriterionVerdict v;
    v.space = space;
    if (space.derivative_order == 0) {
        fill_velocity_checks(v, space.time_exp, space.space_exp);
        return v;
    }

    const Exponent& p = space.time_exp;
    const Exponent& q = space.space_exp;
    const auto embedding = sobolev_exponent(q);
    v.embedded_velocity = MixedNormSpace::velocity(p, embedding.value);
    v.embedding_finite_only = embedding.finite_exponents_only;
    fill_velocity_checks(v, p, embedding.value);

    v.gradient_regularity = weight_check(scaling_weight(space, ScalingKind::ParabolicGradient), Rational(2),
                                         q > Exponent(Rational(3, 2)));
    v.gradient_case = gradient_case(q);
    if (v.gradient_case != GradientCase::None) {
        const Exponent p_min = gradient_ranges_time_exponent(q);
        v.gradient_ranges = weight_check(p.reciprocal(), p_min.reciprocal(), true);
    }
    return v;
}

std::string to_string(ProofCase c)
{
    switch (c) {
    case ProofCase::I: return "i";
    case ProofCase::II1: return "ii1";
    case ProofCase::II2: return "ii2";
    case ProofCase::III: return "iii";
    }
    return "?";
}

ProofCase parse_proof_case(std::string_view text)
{
    if (text == "i") return ProofCase::I;
    if (text == "ii1") return ProofCase::II1;
    if (text == "ii2") return ProofCase::II2;
    if (text == "iii") return ProofCase::III;
    throw std::invalid_argument("unknown proof case '" + std::string(text) + "' (expected i, ii1, ii2, iii)");
}

Rational proof_case_theta(ProofCase c, const Exponent& q)
{
    auto out_of_range = [&](const char* range) {
        return std::domain_error("q = " + q.str() + " outside the range " + range + " of case " + to_string(c));
    };
    switch (c) {
    case ProofCase::I: {
        if (!(q > Exponent(Rational(3, 2)) && q < Exponent(Rational(9, 5)))) throw out_of_range("(3/2, 9/5)");
        const Rational qv = q.value();
        return (3 - 2 * qv) / (3 * (qv - 2));
    }
    case ProofCase::II1: {
        if (!(q >= Exponent(Rational(9, 5)) && q < Exponent(Rational(12, 5)))) throw out_of_range("[9/5, 12/5)");
        const Rational qv = q.value();
        return (5 * qv - 9) / (5 * qv - 6);
    }
    case ProofCase::II2: {
        if (!(q >= Exponent(Rational(12, 5)) && q <= Exponent(3))) throw out_of_range("[12/5, 3]");
        const Rational qv = q.value();
        return (5 * qv - 12) / (5 * qv - 6);
    }
    case ProofCase::III: {
        if (!(q > Exponent(3)) || q.is_infinite()) throw out_of_range("(3, inf)");
        return 1 - q.reciprocal();
    }
    }
    throw std::invalid_argument("unknown proof case");
}

std::optional<BootstrapStep> bootstrap_step(const TimeSpacePair& grad, const Exponent& r, const Exponent& s)
{
    require_bootstrap_input(grad.time, "alpha");
    require_bootstrap_input(grad.space, "beta");
    require_bootstrap_input(r, "r");
    require_bootstrap_input(s, "s");

    const Rational forcing_time_inv = r.reciprocal() + grad.time.reciprocal();
    const Rational forcing_space_inv = s.reciprocal() + grad.space.reciprocal();
    if (forcing_time_inv > 1 || forcing_space_inv > 1) return std::nullopt;

    BootstrapStep step{
        {Exponent::from_reciprocal(forcing_time_inv), Exponent::from_reciprocal(forcing_space_inv)},
        {},
    };
    // The embedding formula itself is well defined at p = 1 even though the
    // embedding lemma is not; exits_open_range records that case.
    const Rational star_inv = forcing_time_inv - kHalf;
    step.next_gradient = {star_inv <= 0 ? Exponent::infinity() : Exponent::from_reciprocal(star_inv),
                          step.forcing.space};
    step.exits_open_range = !strictly_inside_open_range(step.forcing.time) ||
                            !strictly_inside_open_range(step.forcing.space) ||
                            !strictly_inside_open_range(step.next_gradient.time) ||
                            !strictly_inside_open_range(step.next_gradient.space);
    return step;
}

std::string to_string(StopReason r)
{
    switch (r) {
    case StopReason::TargetReached: return "target-reached";
    case StopReason::ExponentLeftRange: return "exponent-left-(1,inf)";
    case StopReason::MaxSteps: return "max-steps";
    }
    return "?";
}

BootstrapTrace bootstrap_trace(const Exponent& r, const Exponent& s, int max_steps)
{
    if (r.reciprocal() + s.reciprocal() > kHalf)
        throw std::domain_error("below Shinbrot regime: 1/r + 1/s = " + to_string(Rational(r.reciprocal() + s.reciprocal())) +
                                " > 1/2");
    BootstrapTrace trace{r, s, {{Exponent(2), Exponent(2)}}, {}, StopReason::MaxSteps};
    const Exponent target = holder_conjugate(s);

    for (int n = 0; n < max_steps; ++n) {
        const auto step = bootstrap_step(trace.gradient_seq.back(), r, s);
        if (!step) {
            trace.stop_reason = StopReason::ExponentLeftRange;
            return trace;
        }
        trace.forcing_seq.push_back(step->forcing);
        trace.gradient_seq.push_back(step->next_gradient);
        if (step->forcing.space <= target) {
            trace.stop_reason = StopReason::TargetReached;
            return trace;
        }
        if (step->exits_open_range) {
            trace.stop_reason = StopReason::ExponentLeftRange;
            return trace;
        }
    }
    trace.stop_reason = StopReason::MaxSteps;
    return trace;
}

TimeSpacePair shinbrot_forcing_closed_form(const Rational& s, long n)
{
    return {Exponent(s / (s - n)), Exponent(2 * s / (2 * n + s))};
}

Endgame shinbrot_endgame(const Exponent& s)
{
    if (s.is_infinite() || s <= Exponent(4))
        throw std::domain_error("endgame requires finite s > 4 (s = 4 is a single bootstrap step), got " + s.str());
    const Rational sv = s.value();
    const Rational half_floor = floor_of(sv / 2);

    Endgame e;
    e.s = sv;
    e.steps = static_cast<long>(boost::multiprecision::numerator(half_floor)) - 1;
    e.theta = (2 * half_floor - sv + 2) / 2;
    e.even_arrival = (sv == 2 * half_floor);
    e.lower = shinbrot_forcing_closed_form(sv, e.steps);
    e.upper = shinbrot_forcing_closed_form(sv, e.steps + 1);
    e.target = MixedNormSpace::velocity(Exponent(2 * sv / (2 + sv)), Exponent(sv / (sv - 1)));
    return e;
}

std::string to_string(RegionLabel label)
{
    switch (label) {
    case RegionLabel::GradientRegularity: return "gradient-regularity";
    case RegionLabel::CaseI: return "case-i";
    case RegionLabel::CaseII: return "case-ii";
    case RegionLabel::CaseIII: return "case-iii";
    case RegionLabel::None: return "none";
    }
    return "none";
}

RegionLabel region_label(const Rational& inv_q, const Rational& inv_p)
{
    const auto space = MixedNormSpace::gradient(Exponent::from_reciprocal(inv_p), Exponent::from_reciprocal(inv_q));
    const auto v = classify(space);
    if (v.gradient_regularity.satisfied) return RegionLabel::GradientRegularity;
    if (v.gradient_ranges.satisfied) {
        switch (v.gradient_case) {
        case GradientCase::I: return RegionLabel::CaseI;
        case GradientCase::II: return RegionLabel::CaseII;
        case GradientCase::III: return RegionLabel::CaseIII;
        case GradientCase::None: break;
        }
    }
    return RegionLabel::None;
}

std::vector<std::pair<Rational, Rational>> region_landmarks()
{
    return {
        {Rational(5, 9), Rational(1, 3)},  // (q, p) = (9/5, 3)
        {Rational(1, 3), Rational(1, 2)},  // (q, p) = (3, 2)
        {Rational(1, 2), Rational(1, 2)},  // (q, p) = (2, 2)
    };
}

std::vector<RegionRow> region_diagram(int points_per_axis)
{
    if (points_per_axis < 1) throw std::invalid_argument("region grid needs at least one point per axis");
    std::vector<RegionRow> rows;
    rows.reserve(static_cast<std::size_t>(points_per_axis) * points_per_axis + 3);
    for (int j = 1; j <= points_per_axis; ++j) {
        const Rational inv_p(j, points_per_axis + 1);
        for (int i = 1; i <= points_per_axis; ++i) {
            const Rational inv_q(i, points_per_axis + 1);
            rows.push_back({inv_q, inv_p, region_label(inv_q, inv_p)});
        }
    }
    for (auto& [inv_q, inv_p] : region_landmarks()) rows.push_back({inv_q, inv_p, region_label(inv_q, inv_p)});
    return rows;
}

void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows)
{
    out << "inv_q,inv_p,region\n";
    for (const auto& row : rows) out << to_string(row.inv_q) << ',' << to_string(row.inv_p) << ',' << to_string(row.label) << '\n';
}

}  // namespace nselab::exponents
