#include "gpn/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gpn/errors.hpp"
#include "gpn/rng.hpp"

namespace gpn {

namespace {
constexpr double kRidge = 1e-8;

double sigmoid(double t) {
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}
}  // namespace

void RegressorSpec::validate() const {
    if (degree < 1) throw ConfigError("regressor degree must be >= 1");
    if (kind == Kind::Mlp) {
        if (hidden.empty()) throw ConfigError("mlp needs at least one hidden layer");
        for (int h : hidden)
            if (h < 1) throw ConfigError("mlp hidden sizes must be positive");
        if (epochs < 1 || batch_size < 1 || !(learning_rate > 0.0))
            throw ConfigError("mlp hyperparameters must be positive");
    }
}

RegressorSpec RegressorSpec::linear_logistic() {
    RegressorSpec s;
    s.kind = Kind::LinearLogistic;
    s.degree = 1;
    return s;
}

RegressorSpec RegressorSpec::poly_logistic(int degree) {
    RegressorSpec s;
    s.kind = Kind::PolyLogistic;
    s.degree = degree;
    return s;
}

RegressorSpec RegressorSpec::mlp() {
    RegressorSpec s;
    s.kind = Kind::Mlp;
    return s;
}

namespace {

// Compositions of `remaining` over positions pos..dims-1, lexicographic.
void compositions(Eigen::Index dims, int remaining, Eigen::Index pos, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (pos == dims - 1) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        compositions(dims, remaining - e, pos + 1, cur, out);
    }
}

// Multi-indices of total degree <= degree, graded (intercept first).
void enumerate_monomials(Eigen::Index dims, int degree, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(dims, 0);
    for (int total = 0; total <= degree; ++total) compositions(dims, total, 0, cur, out);
}

}  // namespace

Eigen::Index polynomial_design_cols(Eigen::Index dims, int degree) {
    // C(dims + degree, degree)
    Eigen::Index num = 1;
    for (int i = 1; i <= degree; ++i) num = num * (dims + i) / i;
    return num;
}

Eigen::MatrixXd polynomial_design(const Eigen::MatrixXd& x, int degree) {
    if (degree < 1) throw std::invalid_argument("polynomial_design: degree must be >= 1");
    std::vector<std::vector<int>> monomials;
    enumerate_monomials(x.cols(), degree, monomials);

    Eigen::MatrixXd design(x.rows(), static_cast<Eigen::Index>(monomials.size()));
    for (std::size_t c = 0; c < monomials.size(); ++c) {
        Eigen::VectorXd col = Eigen::VectorXd::Ones(x.rows());
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            for (int p = 0; p < monomials[c][j]; ++p) col = col.cwiseProduct(x.col(j));
        design.col(static_cast<Eigen::Index>(c)) = col;
    }
    return design;
}

Eigen::VectorXd fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y01) {
    const Eigen::Index p = design.cols();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta(design.rows()), prob(design.rows()), w(design.rows());

    for (int iter = 0; iter < 200; ++iter) {
        eta = design * beta;
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            prob[i] = sigmoid(std::clamp(eta[i], -35.0, 35.0));
            w[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-10);
        }
        Eigen::MatrixXd hess = design.transpose() * w.asDiagonal() * design;
        hess.diagonal().array() += kRidge;
        const Eigen::VectorXd grad = design.transpose() * (y01 - prob) - kRidge * beta;
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        beta += step;
        if (step.cwiseAbs().maxCoeff() < 1e-9 * (1.0 + beta.cwiseAbs().maxCoeff())) return beta;
    }
    throw NumericError("fit_logistic: IRLS did not converge in 200 iterations");
}

Eigen::VectorXd fit_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    Eigen::MatrixXd gram = design.transpose() * design;
    gram.diagonal().array() += kRidge;
    return gram.ldlt().solve(design.transpose() * y);
}

MlpModel MlpModel::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const RegressorSpec& spec, bool sigmoid_head) {
    spec.validate();
    MlpModel model;
    model.sigmoid_head_ = sigmoid_head;

    std::vector<Eigen::Index> dims;
    dims.push_back(x.cols());
    for (int h : spec.hidden) dims.push_back(h);
    dims.push_back(1);

    Xoshiro256pp rng(spec.seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Eigen::MatrixXd w(dims[l], dims[l + 1]);
        const double scale = std::sqrt(2.0 / static_cast<double>(dims[l]));
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = scale * rng.normal();
        model.weights_.push_back(std::move(w));
        model.biases_.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
    }

    const Eigen::Index n = x.rows();
    const std::size_t layers = model.weights_.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<Eigen::MatrixXd> acts(layers + 1);
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        // Fisher-Yates from the model stream: one deterministic shuffle
        // per epoch.
        for (Eigen::Index i = n - 1; i > 0; --i) {
            const auto j = static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(i + 1));
            std::swap(order[i], order[j]);
        }
        for (Eigen::Index start = 0; start < n; start += spec.batch_size) {
            const Eigen::Index b = std::min<Eigen::Index>(spec.batch_size, n - start);
            Eigen::MatrixXd xb(b, x.cols());
            Eigen::VectorXd yb(b);
            for (Eigen::Index i = 0; i < b; ++i) {
                xb.row(i) = x.row(order[start + i]);
                yb[i] = y[order[start + i]];
            }

            acts[0] = xb;
            for (std::size_t l = 0; l < layers; ++l) {
                Eigen::MatrixXd z =
                    (acts[l] * model.weights_[l]).rowwise() + model.biases_[l].transpose();
                if (l + 1 < layers) {
                    acts[l + 1] = z.array().tanh();
                } else if (sigmoid_head) {
                    acts[l + 1] = z.unaryExpr([](double t) { return sigmoid(t); });
                } else {
                    acts[l + 1] = std::move(z);
                }
            }

            // Backprop of the mean squared error.
            Eigen::MatrixXd grad = (acts[layers].col(0) - yb) * (2.0 / static_cast<double>(b));
            if (sigmoid_head)
                grad.array() *= acts[layers].array() * (1.0 - acts[layers].array());
            for (std::size_t l = layers; l-- > 0;) {
                const Eigen::MatrixXd gw = acts[l].transpose() * grad;
                const Eigen::VectorXd gb = grad.colwise().sum().transpose();
                if (l > 0) {
                    grad = (grad * model.weights_[l].transpose()).eval();
                    grad.array() *= 1.0 - acts[l].array().square();
                }
                model.weights_[l] -= spec.learning_rate * gw;
                model.biases_[l] -= spec.learning_rate * gb;
            }
        }
    }
    return model;
}

Eigen::VectorXd MlpModel::predict(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd h = x;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        Eigen::MatrixXd z = (h * weights_[l]).rowwise() + biases_[l].transpose();
        if (l + 1 < weights_.size()) {
            h = z.array().tanh();
        } else if (sigmoid_head_) {
            h = z.unaryExpr([](double t) { return sigmoid(t); });
        } else {
            h = std::move(z);
        }
    }
    return h.col(0);
}

}  // namespace gpn
