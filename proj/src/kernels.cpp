#include "gpn/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpn::kernels {

namespace {

// Clamp the denominator input once, counting, then evaluate the scalar op.
BoundInterval eval_one(const MarginalPoint& unit, const MethodSpec& spec, Diagnostics& diag) {
    MarginalPoint m = unit;
    if (m.u1 > kMaxU1) {
        m.u1 = kMaxU1;
        ++diag.denominator_clamps;
    }
    switch (spec.kind) {
        case BoundMethod::FH:
            return fh_bounds(m, &diag);
        case BoundMethod::Mono:
            return mono_bounds(m, &diag);
        case BoundMethod::Copula:
            return copula_gpn_bounds(m, *spec.copula, &diag);
        default:
            throw std::invalid_argument("method_bounds: unsupported method kind");
    }
}

void validate_spec(const MethodSpec& spec) {
    if (spec.kind == BoundMethod::Copula && !spec.copula)
        throw std::invalid_argument("method_bounds: copula method requires a CopulaSpec");
}

}  // namespace

std::vector<BoundInterval> method_bounds_serial(std::span<const MarginalPoint> units,
                                                const MethodSpec& spec, Diagnostics* diag) {
    validate_spec(spec);
    Diagnostics local;
    std::vector<BoundInterval> out(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) out[i] = eval_one(units[i], spec, local);
    if (diag) *diag += local;
    return out;
}

std::vector<BoundInterval> method_bounds_parallel(std::span<const MarginalPoint> units,
                                                  const MethodSpec& spec, Diagnostics* diag) {
    validate_spec(spec);
    std::vector<BoundInterval> out(units.size());
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    std::vector<Diagnostics> per_thread(max_threads);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(units.size()); ++i) {
        Diagnostics& local = per_thread[omp_get_thread_num()];
        out[i] = eval_one(units[i], spec, local);
    }
    if (diag)
        for (const Diagnostics& d : per_thread) *diag += d;
#else
    Diagnostics local;
    for (std::size_t i = 0; i < units.size(); ++i) out[i] = eval_one(units[i], spec, local);
    if (diag) *diag += local;
#endif
    return out;
}

std::vector<BoundInterval> method_bounds(std::span<const MarginalPoint> units,
                                         const MethodSpec& spec, Diagnostics* diag,
                                         bool parallel) {
    return parallel ? method_bounds_parallel(units, spec, diag)
                    : method_bounds_serial(units, spec, diag);
}

namespace {

double curve_cell(const MarginalPoint& unit, CopulaFamily family, double rho, Diagnostics& diag) {
    MarginalPoint m = unit;
    if (m.u1 > kMaxU1) {
        m.u1 = kMaxU1;
        ++diag.denominator_clamps;
    }
    return copula_gpn(m, family, rho, &diag);
}

}  // namespace

std::vector<double> curve_means_serial(std::span<const MarginalPoint> units, CopulaFamily family,
                                       std::span<const double> rho_grid, Diagnostics* diag) {
    Diagnostics local;
    std::vector<double> means(rho_grid.size(), 0.0);
    for (std::size_t g = 0; g < rho_grid.size(); ++g) {
        double sum = 0.0;
        for (const MarginalPoint& unit : units) sum += curve_cell(unit, family, rho_grid[g], local);
        means[g] = sum / static_cast<double>(units.size());
    }
    if (diag) *diag += local;
    return means;
}

std::vector<double> curve_means_parallel(std::span<const MarginalPoint> units, CopulaFamily family,
                                         std::span<const double> rho_grid, Diagnostics* diag) {
    std::vector<double> means(rho_grid.size(), 0.0);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    std::vector<Diagnostics> per_thread(max_threads);
    // Parallel over grid points; the per-grid unit sum keeps its serial
    // order, so every mean is bit-identical to the reference.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(rho_grid.size()); ++g) {
        Diagnostics& local = per_thread[omp_get_thread_num()];
        double sum = 0.0;
        for (const MarginalPoint& unit : units) sum += curve_cell(unit, family, rho_grid[g], local);
        means[g] = sum / static_cast<double>(units.size());
    }
    if (diag)
        for (const Diagnostics& d : per_thread) *diag += d;
#else
    return curve_means_serial(units, family, rho_grid, diag);
#endif
    return means;
}

double fixed_order_sum(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

double fixed_order_mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("fixed_order_mean: empty input");
    return fixed_order_sum(values) / static_cast<double>(values.size());
}

}  // namespace gpn::kernels
