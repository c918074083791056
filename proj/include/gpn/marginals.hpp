#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gpn/bounds.hpp"
#include "gpn/dataset.hpp"
#include "gpn/regression.hpp"

namespace gpn {

/// Default clip levels: propensity (overlap guard) and marginal
/// (denominator guard).
inline constexpr double kDefaultPropensityClip = 0.01;
inline constexpr double kDefaultMarginalClip = 1e-4;

/// Immutable fitted map x -> probability in [clip, 1-clip]. Cheap to
/// copy (shared state) and safe to evaluate concurrently.
class MarginalSurface {
public:
    double operator()(const Eigen::VectorXd& x) const;
    Eigen::VectorXd evaluate(const Eigen::MatrixXd& x) const;

    /// Wraps an analytic map without clipping (oracle injection).
    static MarginalSurface analytic(std::function<double(const Eigen::VectorXd&)> fn);

    /// Constant surface (degenerate-label fallback).
    static MarginalSurface constant(double value);

    static MarginalSurface logistic(Eigen::VectorXd beta, int degree, double clip);
    static MarginalSurface least_squares(Eigen::VectorXd beta, int degree, double clip);
    static MarginalSurface mlp(MlpModel model, double clip);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Propensity P(Z=1 | X=x), clipped to [eps, 1-eps]. Requires both arms.
MarginalSurface fit_propensity(const Dataset& data, const RegressorSpec& spec,
                               double eps = kDefaultPropensityClip);

/// Within-arm regression of 1(Y <= threshold) on X. Arm subsamples with
/// all-identical indicators yield a constant surface (flagged via
/// `degenerate` when given).
MarginalSurface fit_outcome_cdf(const Dataset& data, int arm, double threshold,
                                const RegressorSpec& spec, bool* degenerate = nullptr);

/// Doubly robust pseudo-outcomes for the requested arm and threshold:
/// rows from the arm get nu + (indicator - nu)/p(arm|x); other rows
/// contribute nu alone.
Eigen::VectorXd dr_pseudo(const Dataset& data, const MarginalSurface& propensity,
                          const MarginalSurface& outcome_cdf, int arm, double threshold,
                          double eps = kDefaultPropensityClip);

struct DrOptions {
    RegressorSpec nuisance;
    RegressorSpec final_stage;
    double propensity_clip = kDefaultPropensityClip;
    double marginal_clip = kDefaultMarginalClip;
    bool cross_fit = false;  // 2-fold nuisance cross-fitting
};

/// Two-step DR estimate of P(Y(arm) <= threshold | X=x): nuisances, then
/// pseudo-outcome regression with a bounded-real (least squares)
/// objective, clipped to [clip, 1-clip]. A prefit propensity can be
/// shared across thresholds; ignored under cross-fitting.
MarginalSurface fit_dr_marginal(const Dataset& data, int arm, double threshold,
                                const DrOptions& options,
                                const std::optional<MarginalSurface>& propensity = std::nullopt);

}  // namespace gpn
