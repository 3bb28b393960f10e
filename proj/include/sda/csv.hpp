#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sda/data.hpp"

namespace sda {

/// Column roles for load_csv. Names refer to header entries. When
/// `feature_cols` is empty, every column that is not the id or label column is
/// treated as a feature.
struct CsvSchema {
    std::string id_col;
    std::string label_col;
    std::vector<std::string> feature_cols;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw Error("non-numeric value '" + cell + "' at row " + std::to_string(row) +
                    ", column '" + col + "'");
    return v;
}

}  // namespace detail

inline LabeledDataset load_csv(const std::string& path, const CsvSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open CSV file: " + path);

    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "empty CSV file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = detail::split_csv_line(line);

    auto find_col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };

    int id_idx = -1, label_idx = -1;
    if (!schema.id_col.empty()) {
        id_idx = find_col(schema.id_col);
        require(id_idx >= 0, "id column '" + schema.id_col + "' not found in header");
    }
    if (!schema.label_col.empty()) {
        label_idx = find_col(schema.label_col);
        require(label_idx >= 0, "label column '" + schema.label_col + "' not found in header");
    }

    std::vector<int> feat_idx;
    if (!schema.feature_cols.empty()) {
        for (const auto& name : schema.feature_cols) {
            int idx = find_col(name);
            require(idx >= 0, "feature column '" + name + "' not found in header");
            feat_idx.push_back(idx);
        }
    } else {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (static_cast<int>(i) != id_idx && static_cast<int>(i) != label_idx)
                feat_idx.push_back(static_cast<int>(i));
    }
    require(!feat_idx.empty(), "CSV has no feature columns");

    std::vector<std::vector<double>> rows;
    LabeledDataset ds;
    std::map<std::string, int> label_map;  // dense indices in first-appearance order
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw Error("row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
        std::vector<double> feats;
        feats.reserve(feat_idx.size());
        for (int idx : feat_idx)
            feats.push_back(detail::parse_cell(cells[idx], line_no, header[idx]));
        rows.push_back(std::move(feats));
        if (id_idx >= 0) ds.row_ids.push_back(cells[id_idx]);
        if (label_idx >= 0) {
            const std::string& lab = cells[label_idx];
            auto it = label_map.find(lab);
            if (it == label_map.end()) {
                it = label_map.emplace(lab, static_cast<int>(ds.class_names.size())).first;
                ds.class_names.push_back(lab);
            }
            ds.labels.push_back(it->second);
        }
    }
    require(!rows.empty(), "CSV has no data rows: " + path);

    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(feat_idx.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    ds.validate();
    return ds;
}

inline void write_csv(const std::string& path, const LabeledDataset& ds) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out.precision(17);
    if (!ds.row_ids.empty()) out << "id,";
    if (ds.has_labels()) out << "label,";
    for (Eigen::Index j = 0; j < ds.features.cols(); ++j)
        out << "f" << j << (j + 1 < ds.features.cols() ? "," : "\n");
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
        if (!ds.row_ids.empty()) out << ds.row_ids[i] << ",";
        if (ds.has_labels()) out << ds.class_names[ds.labels[i]] << ",";
        for (Eigen::Index j = 0; j < ds.features.cols(); ++j)
            out << ds.features(i, j) << (j + 1 < ds.features.cols() ? "," : "\n");
    }
    if (!out) throw Error("write failed: " + path);
}

}  // namespace sda
