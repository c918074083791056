#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gpn/bounds.hpp"

namespace gpn::kernels {

/// Which bound to evaluate per unit. Copula methods carry their spec.
struct MethodSpec {
    BoundMethod kind = BoundMethod::FH;
    std::optional<CopulaSpec> copula;

    static MethodSpec fh() { return {BoundMethod::FH, std::nullopt}; }
    static MethodSpec mono() { return {BoundMethod::Mono, std::nullopt}; }
    static MethodSpec copula_range(CopulaSpec spec) {
        return {BoundMethod::Copula, std::move(spec)};
    }
};

/// Per-unit bound evaluation over a batch of marginal points.
///
/// Unlike the scalar operations, the batch kernels never throw on a
/// degenerate denominator: units with u1 > 1 - 1e-6 are clamped and
/// counted in the diagnostics, so estimated and analytic surfaces flow
/// through unconditionally. The parallel variant writes disjoint slots
/// from an OpenMP loop and is bit-identical to the serial reference.
std::vector<BoundInterval> method_bounds_serial(std::span<const MarginalPoint> units,
                                                const MethodSpec& spec,
                                                Diagnostics* diag = nullptr);
std::vector<BoundInterval> method_bounds_parallel(std::span<const MarginalPoint> units,
                                                  const MethodSpec& spec,
                                                  Diagnostics* diag = nullptr);
std::vector<BoundInterval> method_bounds(std::span<const MarginalPoint> units,
                                         const MethodSpec& spec, Diagnostics* diag = nullptr,
                                         bool parallel = true);

/// Mean copula GPN over units at each grid value (the sensitivity-curve
/// inner loop). Serial reference plus OpenMP variant, bit-identical:
/// per-(grid,unit) values are reduced in fixed index order.
std::vector<double> curve_means_serial(std::span<const MarginalPoint> units, CopulaFamily family,
                                       std::span<const double> rho_grid,
                                       Diagnostics* diag = nullptr);
std::vector<double> curve_means_parallel(std::span<const MarginalPoint> units, CopulaFamily family,
                                         std::span<const double> rho_grid,
                                         Diagnostics* diag = nullptr);

/// Sum in fixed index order (kept serial so reductions stay
/// bit-reproducible regardless of thread count).
double fixed_order_sum(std::span<const double> values);
double fixed_order_mean(std::span<const double> values);

}  // namespace gpn::kernels
