#include "gpn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpn {

namespace {

void check_probability(double p, const char* name) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw std::domain_error(std::string(name) + " must lie in [0,1]");
}

double checked_denominator(double u1) {
    check_probability(u1, "u1");
    if (u1 >= 1.0)
        throw std::domain_error("degenerate denominator: u1 = 1 (no treated mass above c1)");
    return 1.0 - std::min(u1, kMaxU1);
}

double clamp_unit(double x, Diagnostics* diag) {
    const double c = std::clamp(x, 0.0, 1.0);
    if (diag && c != x) ++diag->bound_clamps;
    return c;
}

}  // namespace

Thresholds::Thresholds(double control, double treated) : c0(control), c1(treated) {
    if (std::isnan(c0) || std::isnan(c1))
        throw std::domain_error("thresholds must be numbers");
    if (c1 < c0)
        throw std::domain_error("thresholds must satisfy c1 >= c0");
}

const char* method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::FH: return "fh";
        case BoundMethod::Mono: return "mono";
        case BoundMethod::Copula: return "copula";
        case BoundMethod::Point: return "point";
    }
    return "unknown";
}

Diagnostics& Diagnostics::operator+=(const Diagnostics& other) {
    denominator_clamps += other.denominator_clamps;
    bound_clamps += other.bound_clamps;
    monotonicity_violations += other.monotonicity_violations;
    degenerate_units += other.degenerate_units;
    return *this;
}

CopulaSpec::CopulaSpec(CopulaFamily f, DependenceRange r) : family(f), range(r) {
    validate_range(family, range);
}

BoundInterval fh_bounds(const MarginalPoint& m, Diagnostics* diag) {
    check_probability(m.u0, "u0");
    const double den = checked_denominator(m.u1);
    const double lower = std::max(0.0, (m.u0 - m.u1) / den);
    const double upper = std::min(1.0, m.u0 / den);
    return {clamp_unit(lower, diag), clamp_unit(std::max(lower, upper), diag), BoundMethod::FH};
}

BoundInterval mono_bounds(const MarginalPoint& m, Diagnostics* diag) {
    if (!m.u0_at_c1)
        throw std::invalid_argument("mono_bounds: u0_at_c1 is required");
    check_probability(*m.u0_at_c1, "u0_at_c1");
    BoundInterval fh = fh_bounds(m, diag);
    const double den = 1.0 - std::min(m.u1, kMaxU1);
    double upper = fh.upper;
    if (*m.u0_at_c1 < m.u1) {
        // P(Y >= c1 | Z=0) > P(Y >= c1 | Z=1): inconsistent with a
        // monotone effect; report and keep only the lower bound.
        if (diag) ++diag->monotonicity_violations;
        upper = fh.lower;
    } else {
        upper = std::min(upper, (*m.u0_at_c1 - m.u1) / den);
        upper = std::max(upper, fh.lower);
    }
    return {fh.lower, clamp_unit(upper, diag), BoundMethod::Mono};
}

double point_identify_mono(double u1_at_c, double u0_at_c, Diagnostics* diag) {
    check_probability(u0_at_c, "u0_at_c");
    const double den = checked_denominator(u1_at_c);
    const double value = 1.0 - (1.0 - u0_at_c) / den;
    if (value < 0.0 && diag) ++diag->monotonicity_violations;
    return clamp_unit(value, diag);
}

double copula_gpn(const MarginalPoint& m, CopulaFamily family, double param, Diagnostics* diag) {
    check_probability(m.u0, "u0");
    const double den = checked_denominator(m.u1);
    const double u1 = std::min(m.u1, kMaxU1);
    const double joint = copula_cdf(family, param, u1, m.u0);
    return clamp_unit((m.u0 - joint) / den, diag);
}

BoundInterval copula_gpn_bounds(const MarginalPoint& m, const CopulaSpec& spec,
                                Diagnostics* diag) {
    check_probability(m.u0, "u0");
    const double den = checked_denominator(m.u1);
    const double u1 = std::min(m.u1, kMaxU1);
    const auto [c_min, c_max] = copula_extremes(spec.family, spec.range, u1, m.u0);
    const double lower = clamp_unit((m.u0 - c_max) / den, diag);
    const double upper = clamp_unit((m.u0 - c_min) / den, diag);
    return {std::min(lower, upper), std::max(lower, upper), BoundMethod::Copula};
}

IntervalWeights interval_weights(double surv_lo, double surv_hi) {
    check_probability(surv_lo, "surv_lo");
    check_probability(surv_hi, "surv_hi");
    if (!(surv_lo > surv_hi))
        throw std::domain_error(
            "interval_weights: survival probabilities must be strictly ordered (degenerate "
            "interval)");
    const double w2 = surv_hi / (surv_lo - surv_hi);
    return {1.0 + w2, w2};
}

double interval_gpn(const IntervalGpnInputs& in, Diagnostics* diag) {
    const IntervalWeights w = interval_weights(in.surv_lo1, in.surv_hi1);
    const double value = w.w1 * (in.gpn_hi0_lo1 - in.gpn_lo0_lo1) -
                         w.w2 * (in.gpn_hi0_hi1 - in.gpn_lo0_hi1);
    return clamp_unit(value, diag);
}

BoundInterval aggregate(std::span<const BoundInterval> per_unit) {
    if (per_unit.empty())
        throw std::invalid_argument("aggregate: empty input");
    const BoundMethod tag = per_unit.front().method;
    double lo = 0.0, hi = 0.0;
    for (const BoundInterval& b : per_unit) {
        if (b.method != tag)
            throw std::invalid_argument("aggregate: mixed method tags");
        lo += b.lower;
        hi += b.upper;
    }
    const double n = static_cast<double>(per_unit.size());
    return {lo / n, hi / n, tag};
}

}  // namespace gpn
