#include "distrust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace distrust {

namespace {

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

const char* to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::OrdinalNumeric: return "ordinal-numeric";
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::Target: return "target";
    }
    return "ordinal-numeric";
}

const char* to_string(TaskKind task) {
    return task == TaskKind::Classification ? "classification" : "regression";
}

ColumnKind parse_column_kind(const std::string& name) {
    if (name == "ordinal-numeric") return ColumnKind::OrdinalNumeric;
    if (name == "categorical") return ColumnKind::Categorical;
    if (name == "target") return ColumnKind::Target;
    throw ConfigError("unknown column kind '" + name + "'");
}

std::pair<RawTable, std::vector<ColumnSpec>> load_csv(
    const std::string& path, const std::string& target_column,
    const std::map<std::string, ColumnKind>& kinds) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");

    RawTable table;
    std::string line;
    if (!std::getline(in, line)) throw InputError("'" + path + "': empty file");
    strip_cr(line);
    table.header = split_line(line);
    if (table.header.empty()) throw InputError("'" + path + "': empty header row");

    const auto target_it = std::find(table.header.begin(), table.header.end(), target_column);
    if (target_it == table.header.end())
        throw InputError("'" + path + "': target column '" + target_column + "' not in header");

    const std::size_t width = table.header.size();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != width)
            throw InputError("'" + path + "' line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " fields, got " +
                             std::to_string(fields.size()));
        for (std::size_t c = 0; c < width; ++c)
            if (fields[c].empty())
                throw InputError("'" + path + "' line " + std::to_string(line_no) +
                                 ": missing value in column '" + table.header[c] + "'");
        table.rows.push_back(std::move(fields));
    }
    if (table.rows.empty()) throw InputError("'" + path + "': no data rows");

    std::vector<ColumnSpec> schema(width);
    for (std::size_t c = 0; c < width; ++c) {
        ColumnSpec& spec = schema[c];
        spec.name = table.header[c];
        if (spec.name == target_column) {
            spec.kind = ColumnKind::Target;
            continue;
        }
        auto hinted = kinds.find(spec.name);
        if (hinted != kinds.end()) {
            spec.kind = hinted->second;
        } else {
            bool numeric = true;
            double unused;
            for (const auto& row : table.rows)
                if (!parse_double(row[c], unused)) {
                    numeric = false;
                    break;
                }
            spec.kind = numeric ? ColumnKind::OrdinalNumeric : ColumnKind::Categorical;
        }
        if (spec.kind == ColumnKind::OrdinalNumeric) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (const auto& row : table.rows) {
                double v;
                if (!parse_double(row[c], v))
                    throw InputError("column '" + spec.name + "': value '" + row[c] +
                                     "' is not numeric");
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            spec.observed_min = lo;
            spec.observed_max = hi;
        } else {
            for (const auto& row : table.rows)
                if (std::find(spec.categories.begin(), spec.categories.end(), row[c]) ==
                    spec.categories.end())
                    spec.categories.push_back(row[c]);
        }
    }
    return {std::move(table), std::move(schema)};
}

Dataset encode(const RawTable& table, const std::vector<ColumnSpec>& schema) {
    if (table.rows.empty()) throw InputError("encode: empty table");
    if (schema.size() != table.header.size())
        throw InputError("encode: schema/header size mismatch");

    Dataset ds;
    std::size_t target_col = schema.size();
    Eigen::Index dim = 0;
    for (std::size_t c = 0; c < schema.size(); ++c) {
        const ColumnSpec& spec = schema[c];
        if (spec.kind == ColumnKind::Target) {
            target_col = c;
            continue;
        }
        EncodingMap::ColumnEncoder enc;
        enc.name = spec.name;
        enc.kind = spec.kind;
        enc.offset = dim;
        if (spec.kind == ColumnKind::OrdinalNumeric) {
            if (spec.observed_min > spec.observed_max)
                throw InputError("column '" + spec.name + "': observed-min > observed-max");
            enc.min = spec.observed_min;
            enc.range = spec.observed_max - spec.observed_min;
            enc.width = 1;
        } else {
            if (spec.categories.empty())
                throw InputError("column '" + spec.name + "': no categories");
            enc.categories = spec.categories;
            enc.width = static_cast<Eigen::Index>(spec.categories.size());
        }
        dim += enc.width;
        ds.encoding.columns.push_back(std::move(enc));
    }
    if (target_col == schema.size()) throw InputError("encode: no target column in schema");
    if (dim == 0) throw InputError("encode: no feature columns");
    ds.encoding.encoded_dim = dim;
    ds.encoding.target_name = schema[target_col].name;

    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    ds.points.resize(n, dim);
    ds.targets.resize(n);
    ds.schema = schema;

    // Task inference: any non-numeric or non-integral target value means the
    // labels cannot be dense class ids, so integral numeric columns classify
    // and everything else regresses.
    bool all_numeric = true;
    bool all_integral = true;
    for (const auto& row : table.rows) {
        double v;
        if (!parse_double(row[target_col], v)) {
            all_numeric = false;
            break;
        }
        if (v != std::floor(v)) all_integral = false;
    }
    const bool classification = !all_numeric || all_integral;
    ds.task = classification ? TaskKind::Classification : TaskKind::Regression;
    ds.encoding.task = ds.task;

    std::unordered_map<std::string, double> label_ids;
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = table.rows[static_cast<std::size_t>(r)];
        QueryPoint encoded = ds.encoding.encode_row([&] {
            std::vector<std::string> features;
            features.reserve(ds.encoding.columns.size());
            for (std::size_t c = 0; c < schema.size(); ++c)
                if (c != target_col) features.push_back(row[c]);
            return features;
        }());
        ds.points.row(r) = encoded;

        const std::string& raw_target = row[target_col];
        if (classification) {
            auto it = label_ids.find(raw_target);
            if (it == label_ids.end()) {
                it = label_ids.emplace(raw_target, static_cast<double>(label_ids.size())).first;
                ds.encoding.class_labels.push_back(raw_target);
            }
            ds.targets(r) = it->second;
        } else {
            double v;
            parse_double(raw_target, v);
            ds.targets(r) = v;
        }
    }
    return ds;
}

QueryPoint EncodingMap::encode_row(const std::vector<std::string>& values) const {
    if (values.size() != columns.size())
        throw InputError("encode_row: expected " + std::to_string(columns.size()) +
                         " feature values, got " + std::to_string(values.size()));
    QueryPoint out = QueryPoint::Zero(encoded_dim);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const ColumnEncoder& enc = columns[c];
        const std::string& value = values[c];
        if (enc.kind == ColumnKind::OrdinalNumeric) {
            double v;
            if (!parse_double(value, v))
                throw InputError("column '" + enc.name + "': value '" + value +
                                 "' is not numeric");
            out(enc.offset) = enc.range > 0.0 ? (v - enc.min) / enc.range : 0.0;
        } else {
            const auto it = std::find(enc.categories.begin(), enc.categories.end(), value);
            if (it == enc.categories.end())
                throw InputError("column '" + enc.name + "': unseen category '" + value + "'");
            out(enc.offset + (it - enc.categories.begin())) = 1.0;
        }
    }
    return out;
}

QueryPoint encode_query(const std::vector<std::string>& raw_row, const EncodingMap& encoding) {
    return encoding.encode_row(raw_row);
}

}  // namespace distrust
