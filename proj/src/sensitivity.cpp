#include "gpn/sensitivity.hpp"

#include <cmath>
#include <stdexcept>

#include "gpn/errors.hpp"
#include "gpn/kernels.hpp"

namespace gpn {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    if (count == 1) return {lo};
    std::vector<double> g(count);
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = lo + step * i;
    g.back() = hi;
    return g;
}

SensitivityCurve sensitivity_curve(std::span<const MarginalPoint> units, CopulaFamily family,
                                   std::span<const double> rho_grid, Diagnostics* diag,
                                   bool parallel) {
    if (rho_grid.empty()) throw std::invalid_argument("sensitivity_curve: empty grid");
    if (units.empty()) throw std::invalid_argument("sensitivity_curve: no units");
    for (std::size_t i = 0; i + 1 < rho_grid.size(); ++i)
        if (!(rho_grid[i] < rho_grid[i + 1]))
            throw std::invalid_argument("sensitivity_curve: grid must be strictly increasing");
    for (double rho : rho_grid) validate_param(family, rho);

    SensitivityCurve curve;
    curve.rho.assign(rho_grid.begin(), rho_grid.end());
    curve.gpn = parallel ? kernels::curve_means_parallel(units, family, rho_grid, diag)
                         : kernels::curve_means_serial(units, family, rho_grid, diag);
    return curve;
}

std::optional<double> find_rho_crossing(const SensitivityCurve& curve, double level) {
    if (curve.rho.size() != curve.gpn.size() || curve.rho.empty())
        throw std::invalid_argument("find_rho_crossing: malformed curve");
    for (std::size_t i = 0; i + 1 < curve.gpn.size(); ++i)
        if (curve.gpn[i + 1] > curve.gpn[i] + 1e-9)
            throw NumericError("find_rho_crossing: curve is not monotone nonincreasing");

    if (curve.gpn.front() <= level) return std::nullopt;  // never above the level
    for (std::size_t i = 0; i + 1 < curve.gpn.size(); ++i) {
        const double g0 = curve.gpn[i];
        const double g1 = curve.gpn[i + 1];
        if (g0 > level && g1 <= level) {
            const double t = (g0 - level) / (g0 - g1);
            return curve.rho[i] + t * (curve.rho[i + 1] - curve.rho[i]);
        }
    }
    return std::nullopt;  // stays above the level across the grid
}

}  // namespace gpn
