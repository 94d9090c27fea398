#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xylab::io {

using Value = std::variant<double, std::string>;

/// A rectangular result table with ordered metadata. CSV form: `#`-prefixed
/// metadata lines, a header row, then comma-separated rows with doubles in
/// 17-significant-digit scientific notation (lossless round trip). JSON form
/// mirrors the rows as an array of records plus a metadata object.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

std::string format_double(double v);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Parses CSV produced by to_csv. Numeric-looking cells come back as
/// doubles (including nan), everything else as strings.
Table read_csv(const std::string& text);

/// Numeric view of a cell; strings that parse as doubles are converted.
double as_double(const Value& v);

}  // namespace xylab::io
