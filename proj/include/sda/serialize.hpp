#pragma once

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sda/crc32.hpp"
#include "sda/stack.hpp"

namespace sda {

// Model file layout: magic "SDA1", format version u32 LE, u64 LE metadata
// length + UTF-8 JSON metadata, parameter blocks as row-major IEEE-754 f64 LE
// in layer order W, b, W', b', trailing CRC32 (u32 LE) of all preceding bytes.
constexpr char kModelMagic[4] = {'S', 'D', 'A', '1'};
constexpr std::uint32_t kModelFormatVersion = 1;

namespace detail {

inline void append_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void append_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void append_matrix_row_major(std::string& buf, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double v = m(i, j);
            char bytes[8];
            std::memcpy(bytes, &v, 8);
            buf.append(bytes, 8);
        }
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw Error("model file truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
        need(static_cast<std::size_t>(rows * cols) * 8);
        Matrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) {
                double v;
                std::memcpy(&v, buf.data() + pos, 8);
                pos += 8;
                m(i, j) = v;
            }
        return m;
    }
};

}  // namespace detail

inline std::string serialize_model(const StackedModel& model) {
    model.validate();
    nlohmann::json meta;
    meta["format"] = "sda-stacked-model";
    meta["architecture"] = {{"input_dim", model.architecture.input_dim},
                            {"hidden_dims", model.architecture.hidden_dims}};
    std::vector<double> rates;
    for (const auto& l : model.layers) rates.push_back(l.corruption_rate);
    meta["corruption_rates"] = rates;
    nlohmann::json log = nlohmann::json::array();
    for (const auto& rec : model.training_log)
        log.push_back({{"min_epoch_loss", rec.min_epoch_loss},
                       {"epoch_losses", rec.epoch_losses}});
    meta["training_log"] = log;
    meta["standardizer"] = {
        {"means", std::vector<double>(model.standardizer.means.begin(),
                                      model.standardizer.means.end())},
        {"stds", std::vector<double>(model.standardizer.stds.begin(),
                                     model.standardizer.stds.end())}};

    std::string buf(kModelMagic, 4);
    detail::append_u32(buf, kModelFormatVersion);
    std::string meta_text = meta.dump();
    detail::append_u64(buf, meta_text.size());
    buf += meta_text;
    for (const auto& l : model.layers) {
        detail::append_matrix_row_major(buf, l.W);
        detail::append_matrix_row_major(buf, l.b);
        detail::append_matrix_row_major(buf, l.W_prime);
        detail::append_matrix_row_major(buf, l.b_prime);
    }
    detail::append_u32(buf, crc32(buf.data(), buf.size()));
    return buf;
}

inline StackedModel deserialize_model(const std::string& buf) {
    require(buf.size() >= 4 + 4 + 8 + 4, "model file truncated");
    require(std::memcmp(buf.data(), kModelMagic, 4) == 0, "bad magic bytes: not a model file");
    std::uint32_t stored_crc = 0;
    for (int i = 0; i < 4; ++i)
        stored_crc |= static_cast<std::uint32_t>(
                          static_cast<unsigned char>(buf[buf.size() - 4 + i]))
                      << (8 * i);
    require(crc32(buf.data(), buf.size() - 4) == stored_crc, "model file checksum mismatch");

    detail::Reader r{buf};
    r.pos = 4;
    std::uint32_t version = r.u32();
    require(version == kModelFormatVersion,
            "unsupported model format version " + std::to_string(version));
    std::uint64_t meta_len = r.u64();
    r.need(meta_len);
    nlohmann::json meta = nlohmann::json::parse(buf.substr(r.pos, meta_len));
    r.pos += meta_len;

    StackedModel model;
    model.architecture.input_dim = meta.at("architecture").at("input_dim").get<int>();
    model.architecture.hidden_dims =
        meta.at("architecture").at("hidden_dims").get<std::vector<int>>();
    auto rates = meta.at("corruption_rates").get<std::vector<double>>();
    for (const auto& rec : meta.at("training_log")) {
        LayerTrainingRecord t;
        t.min_epoch_loss = rec.at("min_epoch_loss").get<double>();
        t.epoch_losses = rec.at("epoch_losses").get<std::vector<double>>();
        model.training_log.push_back(std::move(t));
    }
    auto means = meta.at("standardizer").at("means").get<std::vector<double>>();
    auto stds = meta.at("standardizer").at("stds").get<std::vector<double>>();
    model.standardizer.means = Eigen::Map<Vector>(means.data(), means.size());
    model.standardizer.stds = Eigen::Map<Vector>(stds.data(), stds.size());

    require(rates.size() == model.architecture.hidden_dims.size(),
            "corruption rate count mismatch");
    int in = model.architecture.input_dim;
    for (std::size_t k = 0; k < model.architecture.hidden_dims.size(); ++k) {
        int hidden = model.architecture.hidden_dims[k];
        DenoisingAutoencoderLayer l;
        l.W = r.matrix(hidden, in);
        l.b = r.matrix(hidden, 1);
        l.W_prime = r.matrix(in, hidden);
        l.b_prime = r.matrix(in, 1);
        l.corruption_rate = rates[k];
        model.layers.push_back(std::move(l));
        in = hidden;
    }
    require(r.pos == buf.size() - 4, "trailing bytes in model file");
    model.validate();
    return model;
}

inline void save_model(const StackedModel& model, const std::string& path) {
    std::string buf = serialize_model(model);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error("write failed: " + path);
}

inline StackedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(buf);
}

}  // namespace sda
