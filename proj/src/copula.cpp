#include "gpn/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpn/bvn.hpp"
#include "gpn/normal.hpp"
#include "gpn/rng.hpp"

namespace gpn {

namespace {

constexpr double kClaytonIndepEps = 1e-10;
constexpr double kPi = 3.141592653589793;

void check_unit_interval(double u, double v) {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw std::domain_error("copula_cdf: u and v must lie in [0,1]");
}

// log-domain Clayton generator sum, safe for large theta at small u.
double clayton_cdf(double u, double v, double theta) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    const double a = -theta * std::log(u);
    const double b = -theta * std::log(v);
    const double m = std::max(a, b);
    // u^-t + v^-t - 1 = e^m (e^(a-m) + e^(b-m) - e^(-m))
    const double s = std::exp(a - m) + std::exp(b - m) - std::exp(-m);
    return std::exp(-(m + std::log(s)) / theta);
}

double gumbel_cdf(double u, double v, double theta) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    const double la = std::log(-std::log(u));
    const double lb = std::log(-std::log(v));
    const double m = std::max(la, lb);
    const double t = m + std::log1p(std::exp(theta * (std::min(la, lb) - m))) / theta;
    return std::exp(-std::exp(t));
}

double gaussian_cdf(double u, double v, double rho) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    return bvn_cdf(normal_quantile(u), normal_quantile(v), rho);
}

// Keeps uniforms strictly inside (0,1) before normal_quantile.
double clamp_open01(double u) {
    return std::clamp(u, 1e-300, 1.0 - 1e-16);
}

// One-sided positive stable S with E[exp(-tS)] = exp(-t^alpha), via the
// Chambers-Mallows-Stuck representation. Used as the Gumbel frailty.
double positive_stable(double alpha, Xoshiro256pp& rng) {
    const double theta_angle = kPi * rng.uniform01();
    const double w = -std::log(rng.uniform01());
    const double s1 = std::sin(alpha * theta_angle) / std::pow(std::sin(theta_angle), 1.0 / alpha);
    const double s2 = std::pow(std::sin((1.0 - alpha) * theta_angle) / w, (1.0 - alpha) / alpha);
    return s1 * s2;
}

}  // namespace

bool family_has_parameter(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Gaussian:
        case CopulaFamily::Clayton:
        case CopulaFamily::Gumbel:
            return true;
        default:
            return false;
    }
}

const char* family_name(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Gaussian: return "gaussian";
        case CopulaFamily::Clayton: return "clayton";
        case CopulaFamily::Gumbel: return "gumbel";
        case CopulaFamily::Independence: return "independence";
        case CopulaFamily::Comonotone: return "comonotone";
        case CopulaFamily::Countermonotone: return "countermonotone";
    }
    return "unknown";
}

CopulaFamily family_from_name(const std::string& name) {
    if (name == "gaussian") return CopulaFamily::Gaussian;
    if (name == "clayton") return CopulaFamily::Clayton;
    if (name == "gumbel") return CopulaFamily::Gumbel;
    if (name == "independence") return CopulaFamily::Independence;
    if (name == "comonotone") return CopulaFamily::Comonotone;
    if (name == "countermonotone") return CopulaFamily::Countermonotone;
    throw std::domain_error("unknown copula family: " + name);
}

void validate_param(CopulaFamily family, double param) {
    if (!family_has_parameter(family)) return;
    if (std::isnan(param)) throw std::domain_error("copula parameter is NaN");
    switch (family) {
        case CopulaFamily::Gaussian:
            if (param < -1.0 || param > 1.0)
                throw std::domain_error("Gaussian copula parameter must lie in [-1,1]");
            break;
        case CopulaFamily::Clayton:
            if (param < 0.0 || std::isinf(param))
                throw std::domain_error("Clayton copula parameter must lie in (0,inf)");
            break;
        case CopulaFamily::Gumbel:
            if (param < 1.0 || std::isinf(param))
                throw std::domain_error("Gumbel copula parameter must lie in [1,inf)");
            break;
        default:
            break;
    }
}

void validate_range(CopulaFamily family, const DependenceRange& range) {
    if (!family_has_parameter(family))
        throw std::domain_error("dependence range requires a parametric copula family");
    validate_param(family, range.rho_min);
    validate_param(family, range.rho_max);
    if (!(range.rho_min <= range.rho_max))
        throw std::domain_error("dependence range must satisfy rho_min <= rho_max");
}

KendallTau::KendallTau(double t) : value(t) {
    if (std::isnan(t) || std::fabs(t) >= 1.0)
        throw std::domain_error("Kendall tau must satisfy |tau| < 1");
}

double copula_cdf(CopulaFamily family, double param, double u, double v) {
    check_unit_interval(u, v);
    validate_param(family, param);
    switch (family) {
        case CopulaFamily::Independence:
            return u * v;
        case CopulaFamily::Comonotone:
            return std::min(u, v);
        case CopulaFamily::Countermonotone:
            return std::max(u + v - 1.0, 0.0);
        case CopulaFamily::Gaussian:
            return gaussian_cdf(u, v, param);
        case CopulaFamily::Clayton:
            if (param < kClaytonIndepEps) return u * v;
            return clayton_cdf(u, v, param);
        case CopulaFamily::Gumbel:
            if (param == 1.0) return u * v;
            return gumbel_cdf(u, v, param);
    }
    throw std::domain_error("copula_cdf: unknown family");
}

std::pair<double, double> copula_extremes(CopulaFamily family, const DependenceRange& range,
                                          double u, double v) {
    validate_range(family, range);
    check_unit_interval(u, v);
    return {copula_cdf(family, range.rho_min, u, v), copula_cdf(family, range.rho_max, u, v)};
}

double tau_to_param(CopulaFamily family, KendallTau tau) {
    const double t = tau.value;
    switch (family) {
        case CopulaFamily::Gaussian:
            return std::sin(kPi * t / 2.0);
        case CopulaFamily::Clayton:
            if (t <= 0.0)
                throw std::domain_error("Clayton requires Kendall tau in (0,1)");
            return 2.0 * t / (1.0 - t);
        case CopulaFamily::Gumbel:
            if (t < 0.0)
                throw std::domain_error("Gumbel requires Kendall tau in [0,1)");
            return 1.0 / (1.0 - t);
        default:
            throw std::domain_error("tau_to_param: family has no parameter");
    }
}

CopulaSample sample_copula_pairs(CopulaFamily family, double param, std::size_t n,
                                 std::uint64_t seed) {
    if (n == 0) throw std::domain_error("sample_copula_pairs: n must be >= 1");
    validate_param(family, param);

    CopulaSample out;
    out.first.resize(n);
    out.second.resize(n);
    Xoshiro256pp rng(seed);

    switch (family) {
        case CopulaFamily::Gaussian: {
            const double rho = param;
            const double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
            for (std::size_t i = 0; i < n; ++i) {
                const double g1 = rng.normal();
                const double g2 = rng.normal();
                out.first[i] = g1;
                out.second[i] = rho * g1 + s * g2;
            }
            return out;
        }
        case CopulaFamily::Independence: {
            for (std::size_t i = 0; i < n; ++i) {
                out.first[i] = rng.normal();
                out.second[i] = rng.normal();
            }
            return out;
        }
        case CopulaFamily::Comonotone: {
            for (std::size_t i = 0; i < n; ++i) {
                const double g = rng.normal();
                out.first[i] = g;
                out.second[i] = g;
            }
            return out;
        }
        case CopulaFamily::Countermonotone: {
            for (std::size_t i = 0; i < n; ++i) {
                const double u = rng.uniform01();
                out.first[i] = normal_quantile(u);
                out.second[i] = normal_quantile(1.0 - u);
            }
            return out;
        }
        case CopulaFamily::Clayton: {
            const double theta = param;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = rng.uniform01();
                const double w = rng.uniform01();
                double v;
                if (theta < kClaytonIndepEps) {
                    v = w;
                } else {
                    // Exact conditional inversion of C(v | u).
                    v = std::pow(
                        std::pow(u, -theta) * (std::pow(w, -theta / (1.0 + theta)) - 1.0) + 1.0,
                        -1.0 / theta);
                }
                out.first[i] = normal_quantile(u);
                out.second[i] = normal_quantile(v);
            }
            return out;
        }
        case CopulaFamily::Gumbel: {
            const double theta = param;
            if (theta == 1.0) {
                for (std::size_t i = 0; i < n; ++i) {
                    out.first[i] = rng.normal();
                    out.second[i] = rng.normal();
                }
                return out;
            }
            // Marshall-Olkin with a positive stable frailty.
            const double alpha = 1.0 / theta;
            for (std::size_t i = 0; i < n; ++i) {
                const double s = positive_stable(alpha, rng);
                const double e1 = -std::log(rng.uniform01());
                const double e2 = -std::log(rng.uniform01());
                const double u = std::exp(-std::pow(e1 / s, alpha));
                const double v = std::exp(-std::pow(e2 / s, alpha));
                out.first[i] = normal_quantile(clamp_open01(u));
                out.second[i] = normal_quantile(clamp_open01(v));
            }
            return out;
        }
    }
    throw std::domain_error("sample_copula_pairs: unsupported family");
}

}  // namespace gpn
