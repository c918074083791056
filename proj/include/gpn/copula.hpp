#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gpn {

enum class CopulaFamily {
    Gaussian,
    Clayton,
    Gumbel,
    Independence,
    Comonotone,
    Countermonotone,
};

/// True for Gaussian/Clayton/Gumbel; the other families carry no
/// dependence parameter.
bool family_has_parameter(CopulaFamily family);

const char* family_name(CopulaFamily family);
CopulaFamily family_from_name(const std::string& name);

/// Throws std::domain_error unless param lies in the family's domain:
/// Gaussian [-1,1], Clayton (0,inf), Gumbel [1,inf). Parameterless
/// families ignore param.
void validate_param(CopulaFamily family, double param);

/// Admissible dependence-parameter interval [rho_min, rho_max].
struct DependenceRange {
    double rho_min;
    double rho_max;
};

/// Throws std::domain_error unless rho_min <= rho_max and both ends lie
/// in the family's parameter domain (parameterless families always fail).
void validate_range(CopulaFamily family, const DependenceRange& range);

/// Kendall rank correlation, |tau| < 1.
struct KendallTau {
    explicit KendallTau(double t);
    double value;
};

/// C_param(u, v) on the unit square. Exact at the boundary (C(u,0)=0,
/// C(u,1)=u); the Gaussian case routes through bvn_cdf. Clayton with
/// theta below 1e-10 and Gumbel with theta = 1 return the independence
/// copula (removable limits).
double copula_cdf(CopulaFamily family, double param, double u, double v);

/// (min, max) of C_rho(u,v) over the range. All three parametric
/// families are nondecreasing in the parameter (property-tested), so the
/// extremes sit at the interval ends.
std::pair<double, double> copula_extremes(CopulaFamily family, const DependenceRange& range,
                                          double u, double v);

/// Moment-matching inverse of the Kendall-tau map:
/// Gaussian rho = sin(pi tau / 2); Clayton theta = 2 tau / (1 - tau);
/// Gumbel theta = 1 / (1 - tau). Clayton/Gumbel require tau in (0, 1).
double tau_to_param(CopulaFamily family, KendallTau tau);

/// n i.i.d. pairs with standard normal marginals whose copula is the
/// requested one. Bit-reproducible given (seed, n, family, param): each
/// pair consumes a fixed number of draws from one xoshiro256++ stream.
struct CopulaSample {
    std::vector<double> first;
    std::vector<double> second;
};
CopulaSample sample_copula_pairs(CopulaFamily family, double param, std::size_t n,
                                 std::uint64_t seed);

}  // namespace gpn
