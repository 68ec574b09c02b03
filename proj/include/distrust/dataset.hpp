#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distrust/errors.hpp"

namespace distrust {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using QueryPoint = Eigen::RowVectorXd;

enum class ColumnKind : std::uint8_t { OrdinalNumeric = 0, Categorical = 1, Target = 2 };
enum class TaskKind : std::uint8_t { Classification = 0, Regression = 1 };

const char* to_string(ColumnKind kind);
const char* to_string(TaskKind task);
ColumnKind parse_column_kind(const std::string& name);

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::OrdinalNumeric;
    double observed_min = 0.0;  // ordinal only
    double observed_max = 0.0;
    std::vector<std::string> categories;  // categorical only, first-appearance order
};

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Records how raw feature columns map onto encoded dimensions so that query
// rows can be transformed identically to the training pass.
struct EncodingMap {
    struct ColumnEncoder {
        std::string name;
        ColumnKind kind = ColumnKind::OrdinalNumeric;
        double min = 0.0;    // ordinal affine transform: (v - min) / range
        double range = 0.0;  // 0 marks a constant column, which maps to 0
        std::vector<std::string> categories;  // categorical one-hot group
        Eigen::Index offset = 0;              // first encoded dimension
        Eigen::Index width = 1;
    };

    std::vector<ColumnEncoder> columns;  // raw feature-column order
    Eigen::Index encoded_dim = 0;
    std::string target_name;
    TaskKind task = TaskKind::Classification;
    std::vector<std::string> class_labels;  // classification: id -> raw label

    // Encodes one raw feature row (values in `columns` order).
    QueryPoint encode_row(const std::vector<std::string>& values) const;
};

struct Dataset {
    RowMatrix points;         // n x d, training rows encoded into [0,1]
    Eigen::VectorXd targets;  // class ids (dense, first-appearance order) or real values
    TaskKind task = TaskKind::Classification;
    std::vector<ColumnSpec> schema;  // raw-column order, target included
    EncodingMap encoding;

    Eigen::Index n() const { return points.rows(); }
    Eigen::Index d() const { return points.cols(); }
    std::size_t num_classes() const { return encoding.class_labels.size(); }
};

// Reads a UTF-8, comma-separated file with a header row. Column kinds come
// from `kinds` when given, otherwise numeric-parseable columns are inferred
// ordinal and the rest categorical. Missing (empty) fields are rejected.
std::pair<RawTable, std::vector<ColumnSpec>> load_csv(
    const std::string& path, const std::string& target_column,
    const std::map<std::string, ColumnKind>& kinds = {});

// Min-max scales ordinal columns, one-hot expands categoricals, splits off the
// target. A constant ordinal column maps to 0 everywhere.
Dataset encode(const RawTable& table, const std::vector<ColumnSpec>& schema);

// Applies the training-time transform to a raw feature row. Values outside the
// training range extrapolate through the same affine map and may leave [0,1].
QueryPoint encode_query(const std::vector<std::string>& raw_row, const EncodingMap& encoding);

}  // namespace distrust
