#include "gpn/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "gpn/errors.hpp"
#include "gpn/rng.hpp"

namespace gpn {

namespace {
double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}
}  // namespace

struct MarginalSurface::Impl {
    enum class Kind { Analytic, Constant, Logistic, LeastSquares, Mlp } kind;
    std::function<double(const Eigen::VectorXd&)> fn;
    double value = 0.0;
    Eigen::VectorXd beta;
    int degree = 1;
    double clip = 0.0;
    std::optional<MlpModel> model;

    double clamp(double p) const { return std::clamp(p, clip, 1.0 - clip); }
};

double MarginalSurface::operator()(const Eigen::VectorXd& x) const {
    switch (impl_->kind) {
        case Impl::Kind::Analytic:
            return impl_->fn(x);
        case Impl::Kind::Constant:
            return impl_->value;
        case Impl::Kind::Logistic: {
            const Eigen::MatrixXd design = polynomial_design(x.transpose(), impl_->degree);
            return impl_->clamp(sigmoid((design * impl_->beta)(0)));
        }
        case Impl::Kind::LeastSquares: {
            const Eigen::MatrixXd design = polynomial_design(x.transpose(), impl_->degree);
            return impl_->clamp((design * impl_->beta)(0));
        }
        case Impl::Kind::Mlp:
            return impl_->clamp(impl_->model->predict(x.transpose())(0));
    }
    return 0.0;
}

Eigen::VectorXd MarginalSurface::evaluate(const Eigen::MatrixXd& x) const {
    switch (impl_->kind) {
        case Impl::Kind::Analytic: {
            Eigen::VectorXd out(x.rows());
            for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = impl_->fn(x.row(i).transpose());
            return out;
        }
        case Impl::Kind::Constant:
            return Eigen::VectorXd::Constant(x.rows(), impl_->value);
        case Impl::Kind::Logistic: {
            Eigen::VectorXd eta = polynomial_design(x, impl_->degree) * impl_->beta;
            for (Eigen::Index i = 0; i < eta.size(); ++i)
                eta[i] = impl_->clamp(sigmoid(eta[i]));
            return eta;
        }
        case Impl::Kind::LeastSquares: {
            Eigen::VectorXd out = polynomial_design(x, impl_->degree) * impl_->beta;
            for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = impl_->clamp(out[i]);
            return out;
        }
        case Impl::Kind::Mlp: {
            Eigen::VectorXd out = impl_->model->predict(x);
            for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = impl_->clamp(out[i]);
            return out;
        }
    }
    return {};
}

MarginalSurface MarginalSurface::analytic(std::function<double(const Eigen::VectorXd&)> fn) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Analytic;
    impl->fn = std::move(fn);
    MarginalSurface s;
    s.impl_ = std::move(impl);
    return s;
}

MarginalSurface MarginalSurface::constant(double value) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Constant;
    impl->value = value;
    MarginalSurface s;
    s.impl_ = std::move(impl);
    return s;
}

MarginalSurface MarginalSurface::logistic(Eigen::VectorXd beta, int degree, double clip) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Logistic;
    impl->beta = std::move(beta);
    impl->degree = degree;
    impl->clip = clip;
    MarginalSurface s;
    s.impl_ = std::move(impl);
    return s;
}

MarginalSurface MarginalSurface::least_squares(Eigen::VectorXd beta, int degree, double clip) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::LeastSquares;
    impl->beta = std::move(beta);
    impl->degree = degree;
    impl->clip = clip;
    MarginalSurface s;
    s.impl_ = std::move(impl);
    return s;
}

MarginalSurface MarginalSurface::mlp(MlpModel model, double clip) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Mlp;
    impl->model = std::move(model);
    impl->clip = clip;
    MarginalSurface s;
    s.impl_ = std::move(impl);
    return s;
}

namespace {

// Fits P(target=1 | x) with the requested regressor, clipped outputs.
MarginalSurface fit_binary(const Eigen::MatrixXd& x, const Eigen::VectorXd& target,
                           const RegressorSpec& spec, double clip) {
    switch (spec.kind) {
        case RegressorSpec::Kind::LinearLogistic:
            return MarginalSurface::logistic(fit_logistic(polynomial_design(x, 1), target), 1,
                                             clip);
        case RegressorSpec::Kind::PolyLogistic:
            return MarginalSurface::logistic(
                fit_logistic(polynomial_design(x, spec.degree), target), spec.degree, clip);
        case RegressorSpec::Kind::Mlp:
            return MarginalSurface::mlp(MlpModel::fit(x, target, spec, /*sigmoid_head=*/true),
                                        clip);
    }
    throw ConfigError("unknown regressor kind");
}

// Bounded-real regression for the pseudo-outcome stage.
MarginalSurface fit_bounded_real(const Eigen::MatrixXd& x, const Eigen::VectorXd& target,
                                 const RegressorSpec& spec, double clip) {
    switch (spec.kind) {
        case RegressorSpec::Kind::LinearLogistic:
            return MarginalSurface::least_squares(fit_least_squares(polynomial_design(x, 1), target),
                                                  1, clip);
        case RegressorSpec::Kind::PolyLogistic:
            return MarginalSurface::least_squares(
                fit_least_squares(polynomial_design(x, spec.degree), target), spec.degree, clip);
        case RegressorSpec::Kind::Mlp:
            return MarginalSurface::mlp(MlpModel::fit(x, target, spec, /*sigmoid_head=*/false),
                                        clip);
    }
    throw ConfigError("unknown regressor kind");
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> arm_rows(const Dataset& data, int arm,
                                                     double threshold) {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        if (data.z[i] == arm) idx.push_back(static_cast<int>(i));
    Eigen::MatrixXd x(idx.size(), data.dims());
    Eigen::VectorXd ind(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = data.x.row(idx[i]);
        ind[static_cast<Eigen::Index>(i)] = data.y[idx[i]] <= threshold ? 1.0 : 0.0;
    }
    return {std::move(x), std::move(ind)};
}

}  // namespace

MarginalSurface fit_propensity(const Dataset& data, const RegressorSpec& spec, double eps) {
    data.validate();
    spec.validate();
    if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("propensity clip must lie in (0, 0.5)");
    if (!data.both_arms())
        throw DataError("fit_propensity: both treatment arms are required");
    const Eigen::VectorXd target = data.z.cast<double>();
    return fit_binary(data.x, target, spec, eps);
}

MarginalSurface fit_outcome_cdf(const Dataset& data, int arm, double threshold,
                                const RegressorSpec& spec, bool* degenerate) {
    data.validate();
    spec.validate();
    auto [x, ind] = arm_rows(data, arm, threshold);
    if (x.rows() == 0)
        throw DataError("fit_outcome_cdf: arm " + std::to_string(arm) + " is empty");
    if (degenerate) *degenerate = false;
    const double mean = ind.mean();
    if (mean == 0.0 || mean == 1.0) {
        if (degenerate) *degenerate = true;
        return MarginalSurface::constant(mean);
    }
    return fit_binary(x, ind, spec, 0.0);
}

Eigen::VectorXd dr_pseudo(const Dataset& data, const MarginalSurface& propensity,
                          const MarginalSurface& outcome_cdf, int arm, double threshold,
                          double eps) {
    data.validate();
    const Eigen::VectorXd e = propensity.evaluate(data.x);
    const Eigen::VectorXd nu = outcome_cdf.evaluate(data.x);
    Eigen::VectorXd phi(data.rows());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        if (data.z[i] == arm) {
            const double p_arm = std::clamp(arm == 1 ? e[i] : 1.0 - e[i], eps, 1.0 - eps);
            const double ind = data.y[i] <= threshold ? 1.0 : 0.0;
            phi[i] = nu[i] + (ind - nu[i]) / p_arm;
        } else {
            phi[i] = nu[i];
        }
    }
    return phi;
}

MarginalSurface fit_dr_marginal(const Dataset& data, int arm, double threshold,
                                const DrOptions& options,
                                const std::optional<MarginalSurface>& propensity) {
    data.validate();
    options.nuisance.validate();
    options.final_stage.validate();

    Eigen::VectorXd phi(data.rows());
    if (!options.cross_fit) {
        const MarginalSurface e = propensity
                                      ? *propensity
                                      : fit_propensity(data, options.nuisance,
                                                       options.propensity_clip);
        const MarginalSurface nu = fit_outcome_cdf(data, arm, threshold, options.nuisance);
        phi = dr_pseudo(data, e, nu, arm, threshold, options.propensity_clip);
    } else {
        // 2-fold: nuisances fitted on one half, pseudo-outcomes formed
        // on the other. Fold split is deterministic (even/odd rows).
        std::vector<int> fold_a, fold_b;
        for (Eigen::Index i = 0; i < data.rows(); ++i)
            (i % 2 == 0 ? fold_a : fold_b).push_back(static_cast<int>(i));
        for (int k = 0; k < 2; ++k) {
            const auto& fit_idx = k == 0 ? fold_a : fold_b;
            const auto& eval_idx = k == 0 ? fold_b : fold_a;
            const Dataset train = subset(data, fit_idx);
            const Dataset eval = subset(data, eval_idx);
            const MarginalSurface e =
                fit_propensity(train, options.nuisance, options.propensity_clip);
            const MarginalSurface nu = fit_outcome_cdf(train, arm, threshold, options.nuisance);
            const Eigen::VectorXd phi_fold =
                dr_pseudo(eval, e, nu, arm, threshold, options.propensity_clip);
            for (std::size_t i = 0; i < eval_idx.size(); ++i)
                phi[eval_idx[i]] = phi_fold[static_cast<Eigen::Index>(i)];
        }
    }
    return fit_bounded_real(data.x, phi, options.final_stage, options.marginal_clip);
}

}  // namespace gpn
