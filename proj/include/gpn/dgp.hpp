#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gpn/bounds.hpp"
#include "gpn/dataset.hpp"
#include "gpn/regression.hpp"

namespace gpn {

/// The three outcome-mean structures of the simulation study.
enum class DgpCase { Monotonic, Linear, Nonlinear };

char dgp_tag(DgpCase c);                  // 'a' / 'b' / 'c'
DgpCase dgp_from_tag(char tag);

/// Covariate law: trivariate normal, defaults matching the study.
struct CovariateModel {
    Eigen::Vector3d mean;
    Eigen::Matrix3d cov;
    static CovariateModel defaults();
};

/// Dependence structure of the potential-outcome errors. All variants
/// have standard normal marginals.
struct ErrorModel {
    enum class Kind { Shared, GaussianRho, Copula };
    Kind kind = Kind::GaussianRho;
    double rho = 0.5;                                  // GaussianRho
    CopulaFamily family = CopulaFamily::Gaussian;      // Copula
    double param = 0.0;                                // Copula

    static ErrorModel shared();
    static ErrorModel gaussian(double rho);
    static ErrorModel copula(CopulaFamily family, double param);
};

/// Conditional outcome means per case.
double dgp_mu0(DgpCase c, const Eigen::Vector3d& x);
double dgp_mu1(DgpCase c, const Eigen::Vector3d& x);

/// Treatment probability of the study's logistic assignment model.
double dgp_propensity(const Eigen::Vector3d& x);

/// A generated sample together with its hidden evaluation channel. Bound
/// estimation must consume only `observed`.
struct SimulatedData {
    Dataset observed;
    Eigen::VectorXd y0, y1;    // both potential outcomes
    Eigen::VectorXd mu0, mu1;  // conditional means at the drawn X
    DgpCase mean_structure = DgpCase::Linear;
    ErrorModel errors;
};

/// Case (a): shared noise, mu1 = mu0 + X0^2 (monotone by construction).
/// Cases (b)/(c): bivariate normal errors with correlation 0.5.
SimulatedData generate(DgpCase c, std::size_t n, std::uint64_t seed);

/// Linear means with errors drawn from the given copula family at
/// Kendall tau (misspecification study).
SimulatedData generate_misspecified(CopulaFamily family, double tau, std::size_t n,
                                    std::uint64_t seed);

/// P(Y(1) <= c1, Y(0) <= c0 | x) under the error model.
double true_joint(const ErrorModel& errors, double mu0, double mu1, const Thresholds& t);

/// Analytic per-unit GPN(x) = (u0 - joint) / (1 - u1); u1 at 1 is
/// clamped like the bound kernels and counted as a degenerate unit.
double true_gpn_unit(const ErrorModel& errors, double mu0, double mu1, const Thresholds& t,
                     Diagnostics* diag = nullptr);
Eigen::VectorXd true_gpn_per_unit(const SimulatedData& sim, const Thresholds& t,
                                  Diagnostics* diag = nullptr);

/// Population GPN by Monte Carlo over fresh covariates: the ratio
/// E[P(Y(0)<c0, Y(1)>=c1 | X)] / E[P(Y(1)>=c1 | X)], i.e. the chance a
/// randomly drawn unit with Y(1) above c1 would have fallen below c0
/// untreated. Deterministic given (draws, seed); chunked so the value
/// is independent of thread count.
double true_mean_gpn(DgpCase mean_structure, const ErrorModel& errors, const Thresholds& t,
                     std::size_t draws, std::uint64_t seed, bool parallel = true);

/// Oracle marginal points u1/u0/u0_at_c1 from the analytic surfaces.
std::vector<MarginalPoint> oracle_marginal_points(const SimulatedData& sim, const Thresholds& t);

/// Table metrics: mean squared error of each bound against the per-unit
/// truth plus the average interval width.
struct Metrics {
    double mse_lb = 0.0;
    double mse_ub = 0.0;
    double width = 0.0;
};
Metrics evaluate_bounds(std::span<const BoundInterval> bounds, std::span<const double> truth);

struct Table1Config {
    std::size_t n = 4096;
    int replications = 10;
    std::uint64_t seed = 42;
    bool oracle_marginals = false;
    RegressorSpec regressor = RegressorSpec::poly_logistic();
    double propensity_clip = 0.01;
    double marginal_clip = 1e-4;
    DependenceRange conservative{0.0, 1.0};
    DependenceRange expert_monotonic{0.5, 1.0};  // case (a)
    DependenceRange expert_default{0.2, 0.7};    // cases (b), (c)
    bool parallel = true;
};

struct Table1Row {
    DgpCase dgp = DgpCase::Monotonic;
    std::string method;
    Metrics metrics;
};

/// 12 rows: methods {fh, mono, conservative, expert} x cases {a, b, c},
/// metrics averaged over seeded replications.
std::vector<Table1Row> run_table1(const Table1Config& config);

struct Table2Config {
    std::size_t n = 4096;
    int replications = 10;
    std::uint64_t seed = 42;
    bool oracle_marginals = false;
    RegressorSpec regressor = RegressorSpec::poly_logistic();
    double propensity_clip = 0.01;
    double marginal_clip = 1e-4;
    DependenceRange conservative{0.0, 1.0};
    /// Expert range is rho(tau) +- this half-width on the Gaussian-rho
    /// scale, intersected with [-1, 1]. A declared working assumption
    /// (the study does not state its expert range).
    double expert_halfwidth = 0.15;
    std::size_t truth_draws = 200000;
    std::vector<CopulaFamily> families = {CopulaFamily::Gaussian, CopulaFamily::Clayton,
                                          CopulaFamily::Gumbel};
    std::vector<double> taus = {0.20, 0.33, 0.50};
    bool parallel = true;
};

struct Table2Row {
    CopulaFamily family = CopulaFamily::Gaussian;
    double tau = 0.0;
    double rho = 0.0;  // Gaussian working-model parameter sin(pi tau/2)
    double true_mean = 0.0;
    BoundInterval fh, conservative, expert;
};

/// One row per (family, tau) cell; estimation always uses the Gaussian
/// working model regardless of the generating family.
std::vector<Table2Row> run_table2(const Table2Config& config);

void write_table1_csv(const std::filesystem::path& path, std::span<const Table1Row> rows);
void write_table2_csv(const std::filesystem::path& path, std::span<const Table2Row> rows);

}  // namespace gpn
