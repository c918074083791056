#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <span>
#include <vector>

namespace gpn {

/// Observed sample: covariates X (n x d), binary treatment Z, outcome Y.
struct Dataset {
    Eigen::MatrixXd x;
    Eigen::VectorXi z;
    Eigen::VectorXd y;

    Eigen::Index rows() const { return y.size(); }
    Eigen::Index dims() const { return x.cols(); }

    /// Throws DataError on size mismatches, empty data, non-binary z,
    /// or non-finite entries.
    void validate() const;

    /// True when both treatment arms are present.
    bool both_arms() const;
};

/// Reads `y,z,x1..xd` CSV (header required). Parse failures report the
/// offending row and column. Throws DataError.
Dataset read_dataset_csv(const std::filesystem::path& path);

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

/// Row subset in the given index order.
Dataset subset(const Dataset& data, std::span<const int> indices);

}  // namespace gpn
