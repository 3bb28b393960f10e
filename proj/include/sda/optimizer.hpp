#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sda/autoencoder.hpp"

namespace sda {

struct TrainingConfig {
    double base_learning_rate = 0.01;
    double momentum = 0.0;
    double weight_decay = 0.0;
    double corruption_rate = 0.3;
    int batch_size = 100;
    int epochs = 50;
    std::uint64_t seed = 0;
    double adagrad_epsilon = 1e-8;

    void validate() const {
        require(base_learning_rate > 0.0, "base_learning_rate must be positive");
        require(momentum >= 0.0 && momentum < 1.0, "momentum must be in [0,1)");
        require(weight_decay >= 0.0, "weight_decay must be nonnegative");
        require(corruption_rate >= 0.0 && corruption_rate <= 1.0,
                "corruption_rate must be in [0,1]");
        require(batch_size >= 1 && epochs >= 1, "batch_size and epochs must be >= 1");
        require(adagrad_epsilon > 0.0, "adagrad_epsilon must be positive");
    }
};

/// Per-coordinate Adagrad accumulator plus classical-momentum velocity for one
/// parameter block.
struct AdagradState {
    Matrix accumulator;
    Matrix velocity;

    explicit AdagradState(Eigen::Index rows, Eigen::Index cols)
        : accumulator(Matrix::Zero(rows, cols)), velocity(Matrix::Zero(rows, cols)) {}
};

/// Computes the parameter update for one block. Order: accumulate squared
/// gradient, raw Adagrad step, add the weight-decay term, momentum blend.
/// The returned matrix is added to the parameters by the caller.
inline Matrix adagrad_delta(AdagradState& state, const Matrix& grad, const Matrix& params,
                            const TrainingConfig& cfg) {
    require(grad.rows() == state.accumulator.rows() && grad.cols() == state.accumulator.cols(),
            "adagrad: gradient shape mismatch");
    require(params.rows() == grad.rows() && params.cols() == grad.cols(),
            "adagrad: parameter shape mismatch");
    state.accumulator.array() += grad.array().square();
    Matrix raw = -cfg.base_learning_rate * grad.array() /
                 (state.accumulator.array().sqrt() + cfg.adagrad_epsilon);
    if (cfg.weight_decay > 0.0)
        raw.array() -= cfg.base_learning_rate * cfg.weight_decay * params.array();
    state.velocity = cfg.momentum * state.velocity + raw;
    return state.velocity;
}

namespace detail {

struct LayerOptimizer {
    AdagradState sW, sb, sWp, sbp;

    explicit LayerOptimizer(const DenoisingAutoencoderLayer& l)
        : sW(l.W.rows(), l.W.cols()),
          sb(l.b.size(), 1),
          sWp(l.W_prime.rows(), l.W_prime.cols()),
          sbp(l.b_prime.size(), 1) {}

    void step(DenoisingAutoencoderLayer& l, const LayerGradients& g,
              const TrainingConfig& cfg) {
        l.W += adagrad_delta(sW, g.dW, l.W, cfg);
        l.b += adagrad_delta(sb, g.db, l.b, cfg);
        l.W_prime += adagrad_delta(sWp, g.dW_prime, l.W_prime, cfg);
        l.b_prime += adagrad_delta(sbp, g.db_prime, l.b_prime, cfg);
    }
};

}  // namespace detail

constexpr double kDivergenceLossLimit = 1e6;

struct TrainResult {
    DenoisingAutoencoderLayer layer;
    std::vector<double> epoch_losses;  // mean per-batch training loss per epoch

    double min_epoch_loss() const {
        return *std::min_element(epoch_losses.begin(), epoch_losses.end());
    }
};

/// Mini-batch SGD over the data: per epoch, seeded shuffle, batches of
/// cfg.batch_size (final short batch kept), Adagrad step per batch.
/// Deterministic given cfg.seed.
inline TrainResult train_layer(const DenoisingAutoencoderLayer& initial, const Matrix& data,
                               const TrainingConfig& cfg) {
    cfg.validate();
    require(data.cols() == initial.W.cols(), "train: data dimension mismatch");
    require(data.rows() >= cfg.batch_size, "train: fewer rows than batch_size");

    TrainResult result;
    result.layer = initial;
    result.layer.corruption_rate = cfg.corruption_rate;
    detail::LayerOptimizer opt(result.layer);
    Rng rng(cfg.seed);

    const Eigen::Index n = data.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        int batches = 0;
        for (Eigen::Index start = 0; start < n; start += cfg.batch_size) {
            Eigen::Index count = std::min<Eigen::Index>(cfg.batch_size, n - start);
            Matrix batch(count, data.cols());
            for (Eigen::Index i = 0; i < count; ++i)
                batch.row(i) = data.row(order[static_cast<std::size_t>(start + i)]);
            auto [grads, loss] = layer_gradients(result.layer, batch, rng);
            if (!std::isfinite(loss) || loss > kDivergenceLossLimit)
                throw Error("training diverged at epoch " + std::to_string(epoch + 1) +
                            ", batch " + std::to_string(batches + 1) + " (loss " +
                            std::to_string(loss) + ")");
            opt.step(result.layer, grads, cfg);
            loss_sum += loss;
            ++batches;
        }
        result.epoch_losses.push_back(loss_sum / batches);
    }
    return result;
}

}  // namespace sda
