#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gpn {

/// Regressor configuration shared by the nuisance and final stages.
struct RegressorSpec {
    enum class Kind { LinearLogistic, PolyLogistic, Mlp };

    Kind kind = Kind::PolyLogistic;

    // polynomial feature degree (LinearLogistic behaves as degree 1)
    int degree = 2;

    // MLP hyperparameters: plain minibatch SGD with a constant learning
    // rate and seeded shuffles, for reproducibility over speed.
    std::vector<int> hidden = {64, 64};
    int epochs = 200;
    double learning_rate = 1e-3;
    int batch_size = 256;
    std::uint64_t seed = 0;

    void validate() const;

    static RegressorSpec linear_logistic();
    static RegressorSpec poly_logistic(int degree = 2);
    static RegressorSpec mlp();
};

/// Full polynomial basis of total degree <= degree (intercept first,
/// then degree-1 terms, then degree-2, ...), deterministic column order.
Eigen::MatrixXd polynomial_design(const Eigen::MatrixXd& x, int degree);
Eigen::Index polynomial_design_cols(Eigen::Index dims, int degree);

/// Logistic regression by iteratively reweighted least squares with a
/// small ridge. Throws NumericError when the optimizer fails to settle.
Eigen::VectorXd fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y01);

/// Ridge-stabilized least squares.
Eigen::VectorXd fit_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

/// Small dense MLP (tanh hidden layers; linear or sigmoid head).
class MlpModel {
public:
    /// Trains on (x, y); `sigmoid_head` selects the probability head.
    /// Squared-error objective in both cases.
    static MlpModel fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        const RegressorSpec& spec, bool sigmoid_head);

    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;

private:
    std::vector<Eigen::MatrixXd> weights_;
    std::vector<Eigen::VectorXd> biases_;
    bool sigmoid_head_ = false;
};

}  // namespace gpn
