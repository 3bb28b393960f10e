#pragma once

#include "sda/common.hpp"

namespace sda {

/// Linear PCA via symmetric eigendecomposition of the d x d sample covariance.
/// Component rows are orthonormal; sign convention: the largest-magnitude
/// entry of each component is positive.
struct PcaModel {
    Vector mean;        // d
    Matrix components;  // k x d, rows are principal directions
    Vector eigenvalues; // k, nonincreasing, clamped at 0
};

namespace detail {

inline void fix_component_sign(Eigen::Ref<Eigen::RowVectorXd> row) {
    Eigen::Index idx = 0;
    row.cwiseAbs().maxCoeff(&idx);
    if (row[idx] < 0.0) row = -row;
}

}  // namespace detail

inline PcaModel pca_fit(const Matrix& X, int k) {
    const Eigen::Index n = X.rows(), d = X.cols();
    require(n >= 2, "pca: need at least 2 rows");
    require(k >= 1 && k <= std::min<Eigen::Index>(n - 1, d),
            "pca: k must be in [1, min(N-1, d)]");

    PcaModel model;
    model.mean = X.colwise().mean();
    Matrix centered = X.rowwise() - model.mean.transpose();
    Matrix cov = centered.transpose() * centered / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
    require(solver.info() == Eigen::Success, "pca: eigendecomposition failed");

    // Eigen returns eigenvalues ascending; take the top k in descending order.
    model.components.resize(k, d);
    model.eigenvalues.resize(k);
    for (int i = 0; i < k; ++i) {
        Eigen::Index src = d - 1 - i;
        model.eigenvalues[i] = std::max(solver.eigenvalues()[src], 0.0);
        model.components.row(i) = solver.eigenvectors().col(src).transpose();
        detail::fix_component_sign(model.components.row(i));
    }
    return model;
}

inline Matrix pca_transform(const PcaModel& model, const Matrix& X) {
    require(X.cols() == model.mean.size(), "pca transform: dimension mismatch");
    return (X.rowwise() - model.mean.transpose()) * model.components.transpose();
}

}  // namespace sda
