#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gpn/bounds.hpp"

namespace gpn {

/// Averaged GPN as a function of the dependence parameter, on a strictly
/// increasing grid. Nonincreasing in rho for fixed marginals.
struct SensitivityCurve {
    std::vector<double> rho;
    std::vector<double> gpn;
};

std::vector<double> linspace(double lo, double hi, int count);

/// Average of copula_gpn over the units at each grid value.
SensitivityCurve sensitivity_curve(std::span<const MarginalPoint> units, CopulaFamily family,
                                   std::span<const double> rho_grid, Diagnostics* diag = nullptr,
                                   bool parallel = true);

/// First rho where the (nonincreasing) curve crosses `level` from above,
/// by linear interpolation between the bracketing grid points. Returns
/// nullopt when the curve never reaches the level inside the grid.
/// Throws NumericError when the curve is not monotone nonincreasing
/// (tolerance 1e-9).
std::optional<double> find_rho_crossing(const SensitivityCurve& curve, double level);

}  // namespace gpn
