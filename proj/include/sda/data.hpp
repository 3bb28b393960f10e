#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sda/common.hpp"

namespace sda {

/// Labeled (or unlabeled) feature table. Rows are samples, columns features.
/// `labels` is empty when no label column was present; otherwise it holds one
/// dense class index in [0, class_names.size()) per row.
struct LabeledDataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::vector<std::string> row_ids;

    bool has_labels() const { return !labels.empty(); }
    int num_classes() const { return static_cast<int>(class_names.size()); }

    void validate() const {
        require(features.cols() >= 1, "dataset must have at least one feature column");
        require(all_finite(features), "dataset contains non-finite values");
        if (has_labels()) {
            require(static_cast<Eigen::Index>(labels.size()) == features.rows(),
                    "label count does not match row count");
            require(!class_names.empty(), "labels present but no class names");
            for (int l : labels)
                require(l >= 0 && l < num_classes(), "label index out of range");
        }
        if (!row_ids.empty())
            require(static_cast<Eigen::Index>(row_ids.size()) == features.rows(),
                    "row id count does not match row count");
    }
};

/// Per-column mean/std used to scale features to mean 0, variance 1.
struct StandardizationParams {
    Vector means;
    Vector stds;  // population std, all > 0
};

struct StandardizerOptions {
    bool drop_constant_columns = false;
};

/// Fits column means and population standard deviations. Constant columns are
/// a hard error unless `opts.drop_constant_columns` is set, in which case they
/// are removed and their indices returned via `dropped`.
inline StandardizationParams fit_standardizer(const Matrix& X,
                                              const StandardizerOptions& opts = {},
                                              std::vector<int>* dropped = nullptr) {
    require(X.rows() >= 2, "need at least 2 rows to fit a standardizer");
    StandardizationParams p;
    p.means = X.colwise().mean();
    Vector var = (X.rowwise() - p.means.transpose()).array().square().colwise().mean();
    p.stds = var.array().sqrt();
    std::vector<int> constant;
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        if (p.stds[j] <= 0.0) constant.push_back(static_cast<int>(j));
    if (!constant.empty() && !opts.drop_constant_columns)
        throw Error("constant feature column " + std::to_string(constant.front()) +
                    " (std = 0); drop it or pass --drop-constant-cols");
    if (!constant.empty()) {
        Eigen::Index keep = X.cols() - static_cast<Eigen::Index>(constant.size());
        Vector m(keep), s(keep);
        Eigen::Index out = 0;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            if (p.stds[j] <= 0.0) continue;
            m[out] = p.means[j];
            s[out] = p.stds[j];
            ++out;
        }
        p.means = std::move(m);
        p.stds = std::move(s);
    }
    if (dropped) *dropped = std::move(constant);
    return p;
}

inline Matrix apply_standardizer(const Matrix& X, const StandardizationParams& p) {
    require(X.cols() == p.means.size(), "standardizer dimension mismatch: matrix has " +
                                            std::to_string(X.cols()) + " cols, params have " +
                                            std::to_string(p.means.size()));
    return (X.rowwise() - p.means.transpose()).array().rowwise() /
           p.stds.transpose().array();
}

/// Drops the named columns from X (used with drop_constant_columns so that
/// apply_standardizer sees the same column set the params were fit on).
inline Matrix drop_columns(const Matrix& X, const std::vector<int>& cols) {
    if (cols.empty()) return X;
    Matrix out(X.rows(), X.cols() - static_cast<Eigen::Index>(cols.size()));
    std::size_t c = 0;
    Eigen::Index o = 0;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (c < cols.size() && cols[c] == j) { ++c; continue; }
        out.col(o++) = X.col(j);
    }
    return out;
}

struct SyntheticSpec {
    std::uint64_t seed = 0;
    int n_per_class = 500;
    int n_classes = 3;
    int latent_dim = 5;
    int ambient_dim = 916;
    double noise_std = 0.1;
};

/// Seeded benchmark generator: per-class Gaussian clusters in a low latent
/// space, pushed through a fixed random affine -> tanh -> affine map into the
/// ambient space, plus isotropic noise. Pure function of the spec.
inline LabeledDataset synthetic_manifold(const SyntheticSpec& s) {
    require(s.latent_dim < s.ambient_dim, "latent_dim must be < ambient_dim");
    require(s.n_classes >= 2, "need at least 2 classes");
    require(s.n_per_class >= 1 && s.latent_dim >= 1, "counts must be positive");
    require(s.noise_std >= 0.0, "noise_std must be nonnegative");

    Rng rng(s.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Fixed nonlinear map, drawn once: ambient = B * tanh(A * latent) + noise.
    int mid = 2 * s.latent_dim;
    Matrix A(mid, s.latent_dim);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = gauss(rng) * 1.5;
    Matrix B(s.ambient_dim, mid);
    for (Eigen::Index i = 0; i < B.size(); ++i)
        B.data()[i] = gauss(rng) / std::sqrt(static_cast<double>(mid));

    // Class centers in latent space, separated enough that the classes are
    // linearly separable there at noise_std = 0.
    Matrix centers(s.n_classes, s.latent_dim);
    for (Eigen::Index i = 0; i < centers.size(); ++i) centers.data()[i] = gauss(rng) * 2.0;

    int n = s.n_per_class * s.n_classes;
    LabeledDataset ds;
    ds.features.resize(n, s.ambient_dim);
    ds.labels.resize(n);
    for (int c = 0; c < s.n_classes; ++c) ds.class_names.push_back("class" + std::to_string(c));

    Vector latent(s.latent_dim);
    int row = 0;
    for (int c = 0; c < s.n_classes; ++c) {
        for (int i = 0; i < s.n_per_class; ++i, ++row) {
            for (int j = 0; j < s.latent_dim; ++j)
                latent[j] = centers(c, j) + gauss(rng);
            Vector ambient = B * (A * latent).array().tanh().matrix();
            if (s.noise_std > 0.0)
                for (int j = 0; j < s.ambient_dim; ++j) ambient[j] += s.noise_std * gauss(rng);
            ds.features.row(row) = ambient.transpose();
            ds.labels[row] = c;
        }
    }
    return ds;
}

}  // namespace sda
