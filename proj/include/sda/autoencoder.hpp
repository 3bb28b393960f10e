#pragma once

#include <cmath>

#include "sda/common.hpp"

namespace sda {

/// Numerically stable logistic sigmoid.
inline double sigmoid(double a) {
    if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
    double e = std::exp(a);
    return e / (1.0 + e);
}

/// One de-noising autoencoder layer: sigmoid encoder y = sigmoid(Wx + b),
/// affine decoder z = W'y + b'. Encoder and decoder weights are untied.
struct DenoisingAutoencoderLayer {
    Matrix W;        // n x d
    Vector b;        // n
    Matrix W_prime;  // d x n
    Vector b_prime;  // d
    double corruption_rate = 0.0;

    int input_dim() const { return static_cast<int>(W.cols()); }
    int hidden_dim() const { return static_cast<int>(W.rows()); }

    void validate() const {
        require(W.rows() >= 1 && W.cols() >= 1, "layer dims must be >= 1");
        require(W_prime.rows() == W.cols() && W_prime.cols() == W.rows(),
                "decoder weight shape must be the transpose of the encoder's");
        require(b.size() == W.rows() && b_prime.size() == W.cols(), "bias shape mismatch");
        require(all_finite(W) && all_finite(W_prime) && b.allFinite() && b_prime.allFinite(),
                "layer parameters must be finite");
        require(corruption_rate >= 0.0 && corruption_rate <= 1.0,
                "corruption rate must be in [0,1]");
    }
};

/// Glorot-style uniform init on +-sqrt(6/(n+d)) for both weight blocks,
/// biases zero.
inline DenoisingAutoencoderLayer make_layer(int input_dim, int hidden_dim,
                                            double corruption_rate, Rng& rng) {
    require(input_dim >= 1 && hidden_dim >= 1, "layer dims must be >= 1");
    double bound = std::sqrt(6.0 / (input_dim + hidden_dim));
    std::uniform_real_distribution<double> uni(-bound, bound);
    DenoisingAutoencoderLayer l;
    l.W.resize(hidden_dim, input_dim);
    for (Eigen::Index i = 0; i < l.W.size(); ++i) l.W.data()[i] = uni(rng);
    l.W_prime.resize(input_dim, hidden_dim);
    for (Eigen::Index i = 0; i < l.W_prime.size(); ++i) l.W_prime.data()[i] = uni(rng);
    l.b = Vector::Zero(hidden_dim);
    l.b_prime = Vector::Zero(input_dim);
    l.corruption_rate = corruption_rate;
    l.validate();
    return l;
}

/// Masking corruption: each coordinate zeroed independently with probability
/// `rate`. rate 0 and 1 are exact (no RNG draw variance at the endpoints).
inline Vector corrupt(const Vector& x, double rate, Rng& rng) {
    require(rate >= 0.0 && rate <= 1.0, "corruption rate must be in [0,1]");
    if (rate == 0.0) return x;
    if (rate == 1.0) return Vector::Zero(x.size());
    Vector out = x;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (Eigen::Index i = 0; i < out.size(); ++i)
        if (uni(rng) < rate) out[i] = 0.0;
    return out;
}

inline Vector encode_layer(const DenoisingAutoencoderLayer& l, const Vector& x) {
    require(x.size() == l.W.cols(), "encode: input dimension mismatch");
    Vector pre = l.W * x + l.b;
    return pre.unaryExpr([](double a) { return sigmoid(a); });
}

/// Row-batch encode: each row of X is one sample.
inline Matrix encode_batch(const DenoisingAutoencoderLayer& l, const Matrix& X) {
    require(X.cols() == l.W.cols(), "encode: input dimension mismatch");
    Matrix pre = (X * l.W.transpose()).rowwise() + l.b.transpose();
    return pre.unaryExpr([](double a) { return sigmoid(a); });
}

inline Vector decode_layer(const DenoisingAutoencoderLayer& l, const Vector& y) {
    require(y.size() == l.W_prime.cols(), "decode: hidden dimension mismatch");
    return l.W_prime * y + l.b_prime;
}

/// Mean squared error with 1/d normalization; batch input takes the mean over
/// rows so loss magnitudes are comparable across architectures.
inline double reconstruction_loss(const Matrix& x, const Matrix& z) {
    require(x.rows() == z.rows() && x.cols() == z.cols(), "loss: shape mismatch");
    require(x.size() > 0, "loss: empty input");
    return (x - z).array().square().mean();
}

struct LayerGradients {
    Matrix dW;
    Vector db;
    Matrix dW_prime;
    Vector db_prime;
};

/// Exact analytic gradients of the batch-mean reconstruction loss. Corruption
/// masks are sampled once per example from `rng`; the loss compares the
/// reconstruction against the clean input.
inline std::pair<LayerGradients, double> layer_gradients(const DenoisingAutoencoderLayer& l,
                                                         const Matrix& x_batch, Rng& rng) {
    const Eigen::Index B = x_batch.rows();
    const Eigen::Index d = x_batch.cols();
    require(B >= 1, "gradient: empty batch");
    require(d == l.W.cols(), "gradient: input dimension mismatch");
    require(all_finite(x_batch), "gradient: non-finite inputs");

    Matrix x_tilde(B, d);
    for (Eigen::Index i = 0; i < B; ++i)
        x_tilde.row(i) = corrupt(x_batch.row(i).transpose(), l.corruption_rate, rng).transpose();

    Matrix y = encode_batch(l, x_tilde);                                  // B x n
    Matrix z = (y * l.W_prime.transpose()).rowwise() + l.b_prime.transpose();  // B x d
    Matrix resid = z - x_batch;
    double loss = resid.array().square().mean();

    // dL/dz = 2(z-x)/(B*d)
    Matrix dz = resid * (2.0 / static_cast<double>(B * d));
    Matrix dy = dz * l.W_prime;                           // B x n
    Matrix dpre = dy.array() * y.array() * (1.0 - y.array());

    LayerGradients g;
    g.dW_prime = dz.transpose() * y;
    g.db_prime = dz.colwise().sum().transpose();
    g.dW = dpre.transpose() * x_tilde;
    g.db = dpre.colwise().sum().transpose();
    return {std::move(g), loss};
}

}  // namespace sda
