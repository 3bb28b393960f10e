#pragma once

#include <string>
#include <vector>

#include "sda/data.hpp"
#include "sda/optimizer.hpp"

namespace sda {

/// Layer sizes for a stacked model: input_dim is the data dimension, each
/// hidden dim is one dA's code size.
struct Architecture {
    int input_dim = 0;
    std::vector<int> hidden_dims;

    void validate() const {
        require(input_dim >= 1, "architecture input_dim must be >= 1");
        require(!hidden_dims.empty() && hidden_dims.size() <= 5,
                "architecture must have 1..5 hidden layers");
        for (int h : hidden_dims) require(h >= 1, "hidden dims must be >= 1");
    }

    int output_dim() const { return hidden_dims.back(); }

    long total_parameters() const {
        long total = 0, in = input_dim;
        for (int h : hidden_dims) {
            total += 2L * in * h + in + h;  // W, W', b, b'
            in = h;
        }
        return total;
    }

    std::string to_string() const {
        std::string s = std::to_string(input_dim);
        for (int h : hidden_dims) s += "-" + std::to_string(h);
        return s;
    }
};

struct LayerTrainingRecord {
    double min_epoch_loss = 0.0;
    std::vector<double> epoch_losses;
};

struct StackedModel {
    std::vector<DenoisingAutoencoderLayer> layers;
    StandardizationParams standardizer;
    Architecture architecture;
    std::vector<LayerTrainingRecord> training_log;

    void validate() const {
        architecture.validate();
        require(layers.size() == architecture.hidden_dims.size(),
                "layer count does not match architecture");
        int in = architecture.input_dim;
        for (std::size_t k = 0; k < layers.size(); ++k) {
            layers[k].validate();
            require(layers[k].input_dim() == in && layers[k].hidden_dim() ==
                        architecture.hidden_dims[k],
                    "layer " + std::to_string(k) + " breaks the dimension chain");
            in = architecture.hidden_dims[k];
        }
    }
};

/// Greedy layer-wise pre-training: layer k trains on the clean (uncorrupted)
/// encoding of the data through layers 0..k-1; corruption is applied fresh at
/// layer k's own input during its training.
inline StackedModel pretrain_stack(const Matrix& data, const Architecture& arch,
                                   const TrainingConfig& cfg,
                                   const StandardizationParams& standardizer = {}) {
    arch.validate();
    require(data.cols() == arch.input_dim, "pretrain: data dimension mismatch");

    StackedModel model;
    model.architecture = arch;
    model.standardizer = standardizer;

    Matrix current = data;
    int in = arch.input_dim;
    for (std::size_t k = 0; k < arch.hidden_dims.size(); ++k) {
        Rng init_rng(mix_seed(cfg.seed, 0x1000 + k));
        auto layer = make_layer(in, arch.hidden_dims[k], cfg.corruption_rate, init_rng);
        TrainingConfig layer_cfg = cfg;
        layer_cfg.seed = mix_seed(cfg.seed, k);
        TrainResult trained;
        try {
            trained = train_layer(layer, current, layer_cfg);
        } catch (const Error& e) {
            throw Error("layer " + std::to_string(k) + ": " + e.what());
        }
        model.layers.push_back(trained.layer);
        model.training_log.push_back({trained.min_epoch_loss(), trained.epoch_losses});
        current = encode_batch(trained.layer, current);
        in = arch.hidden_dims[k];
    }
    model.validate();
    return model;
}

/// Forward pass through every encoder, no corruption. Output entries are in
/// (0,1) by construction.
inline Matrix encode(const StackedModel& model, const Matrix& X, bool standardize = false) {
    Matrix current = standardize ? apply_standardizer(X, model.standardizer) : X;
    require(current.cols() == model.architecture.input_dim, "encode: dimension mismatch");
    for (const auto& layer : model.layers) current = encode_batch(layer, current);
    return current;
}

/// Clean reconstruction loss of the first layer on held-out data (validation
/// metric for grid search).
inline double validation_loss(const StackedModel& model, const Matrix& X) {
    require(!model.layers.empty(), "model has no layers");
    Matrix current = X;
    double loss = 0.0;
    for (const auto& layer : model.layers) {
        Matrix y = encode_batch(layer, current);
        Matrix z = (y * layer.W_prime.transpose()).rowwise() + layer.b_prime.transpose();
        loss = reconstruction_loss(current, z);
        current = y;
    }
    return loss;  // deepest layer's clean reconstruction loss
}

}  // namespace sda
