#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "gpn/copula.hpp"

namespace gpn {

/// Outcome thresholds (c0 for the control arm event, c1 for the treated
/// arm event). Requires c1 >= c0; equality routes callers to the
/// point-identification formula.
struct Thresholds {
    Thresholds(double control, double treated);
    double c0;
    double c1;
};

enum class BoundMethod { FH, Mono, Copula, Point };

const char* method_name(BoundMethod m);

/// A lower/upper bound pair on GPN(x), tagged with the producing method.
struct BoundInterval {
    double lower = 0.0;
    double upper = 1.0;
    BoundMethod method = BoundMethod::FH;
};

/// Per-unit marginal inputs:
///   u1       = P(Y(1) <= c1 | x)
///   u0       = P(Y(0) <= c0 | x)
///   u0_at_c1 = P(Y(0) <= c1 | x), needed only by the monotonicity bound.
struct MarginalPoint {
    double u1 = 0.0;
    double u0 = 0.0;
    std::optional<double> u0_at_c1;
};

/// Counters for soft numerical interventions. Batch kernels clamp and
/// count instead of throwing; the scalar operations below enforce their
/// preconditions strictly.
struct Diagnostics {
    long long denominator_clamps = 0;     // u1 pulled below 1 - 1e-6
    long long bound_clamps = 0;           // outputs pulled into [0,1] / ordered
    long long monotonicity_violations = 0;  // u0_at_c1 < u1 observed
    long long degenerate_units = 0;       // u1 == 1 in analytic truth

    Diagnostics& operator+=(const Diagnostics& other);
};

/// Largest admissible u1 before the GPN denominator is considered
/// degenerate; estimated or analytic surfaces at/above this are clamped
/// (and counted) by the batch kernels.
inline constexpr double kMaxU1 = 1.0 - 1e-6;

/// Freche t-Hoeffding bounds under ignorability alone:
///   lower = max(0, (u0 - u1) / (1 - u1)),  upper = min(1, u0 / (1 - u1)).
/// Throws std::domain_error when u1 >= 1 (no treated mass above c1).
BoundInterval fh_bounds(const MarginalPoint& m, Diagnostics* diag = nullptr);

/// Bounds under ignorability + monotone treatment effect. Lower equals
/// the FH lower; the upper is additionally capped by
/// (u0_at_c1 - u1) / (1 - u1). Data with u0_at_c1 < u1 contradict
/// monotonicity: the violation is counted and the upper falls back to
/// the lower bound. Throws std::invalid_argument when u0_at_c1 is absent.
BoundInterval mono_bounds(const MarginalPoint& m, Diagnostics* diag = nullptr);

/// Point identification at a common threshold c0 = c1 = c under
/// monotonicity: 1 - (1 - u0_at_c) / (1 - u1_at_c), clamped to [0,1]
/// with a counted diagnostic when the data violate u0_at_c >= u1_at_c.
double point_identify_mono(double u1_at_c, double u0_at_c, Diagnostics* diag = nullptr);

/// GPN(x; rho) = (u0 - C_rho(u1, u0)) / (1 - u1) for a fixed copula.
double copula_gpn(const MarginalPoint& m, CopulaFamily family, double param,
                  Diagnostics* diag = nullptr);

/// Copula family plus admissible dependence range.
struct CopulaSpec {
    CopulaSpec(CopulaFamily f, DependenceRange r);
    CopulaFamily family;
    DependenceRange range;
};

/// Sharp bounds on GPN(x) under the dependence restriction: the copula
/// value is extremized over the range, entering the GPN formula with a
/// negative sign, so lower uses C at rho_max and upper C at rho_min.
BoundInterval copula_gpn_bounds(const MarginalPoint& m, const CopulaSpec& spec,
                                Diagnostics* diag = nullptr);

/// Weights of the interval-event decomposition. w1 - w2 = 1 holds
/// exactly: w2 is the computed ratio and w1 is defined as 1 + w2.
struct IntervalWeights {
    double w1;
    double w2;
};

/// Requires surv_lo > surv_hi >= 0 (survival of Y(1) at the lower/upper
/// interval ends); equal values leave the conditioning event empty.
IntervalWeights interval_weights(double surv_lo, double surv_hi);

/// Inputs for the interval-event GPN: the four corner GPN values over
/// {c0_lo, c0_hi} x {c1_lo, c1_hi} and the two Y(1) survival
/// probabilities that define the weights.
struct IntervalGpnInputs {
    double gpn_lo0_lo1;  // thresholds (c0_lo, c1_lo)
    double gpn_hi0_lo1;  // (c0_hi, c1_lo)
    double gpn_lo0_hi1;  // (c0_lo, c1_hi)
    double gpn_hi0_hi1;  // (c0_hi, c1_hi)
    double surv_lo1;     // P(Y(1) >= c1_lo | Z=1)
    double surv_hi1;     // P(Y(1) >= c1_hi | Z=1)
};

/// P(c0_lo <= Y(0) < c0_hi | Z=1, c1_lo <= Y(1) < c1_hi) as the weighted
/// combination w1 * [GPN(c0_hi,c1_lo) - GPN(c0_lo,c1_lo)]
///            - w2 * [GPN(c0_hi,c1_hi) - GPN(c0_lo,c1_hi)],
/// clamped to [0,1] with a counted diagnostic.
double interval_gpn(const IntervalGpnInputs& in, Diagnostics* diag = nullptr);

/// Componentwise arithmetic mean in fixed index order. Requires a
/// non-empty span with a homogeneous method tag.
BoundInterval aggregate(std::span<const BoundInterval> per_unit);

}  // namespace gpn
