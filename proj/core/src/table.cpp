#include "xylab/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace xylab::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

std::string value_to_string(const Value& v) {
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    return std::get<std::string>(v);
}

bool looks_numeric(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (const auto& [key, value] : table.metadata) {
        os << "# " << key << ": " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("to_csv: row width does not match header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << value_to_string(row[c]);
        }
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json root;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    root["metadata"] = std::move(meta);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("to_json: row width does not match header");
        }
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<double>(row[c])) {
                const double d = std::get<double>(row[c]);
                if (std::isnan(d)) {
                    rec[table.columns[c]] = nullptr;
                } else {
                    rec[table.columns[c]] = d;
                }
            } else {
                rec[table.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        rows.push_back(std::move(rec));
    }
    root["rows"] = std::move(rows);
    return root.dump(2) + "\n";
}

Table read_csv(const std::string& text) {
    Table table;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            const auto colon = body.find(": ");
            if (colon != std::string::npos) {
                table.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
            } else {
                table.metadata.emplace_back(body, "");
            }
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (!have_header) {
            table.columns = std::move(cells);
            have_header = true;
            continue;
        }
        std::vector<Value> row;
        row.reserve(cells.size());
        for (auto& c : cells) {
            double d;
            if (looks_numeric(c, d)) {
                row.emplace_back(d);
            } else {
                row.emplace_back(std::move(c));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

double as_double(const Value& v) {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    double d;
    if (looks_numeric(std::get<std::string>(v), d)) return d;
    throw std::invalid_argument("as_double: cell is not numeric");
}

}  // namespace xylab::io
