// csv.hpp — time-series CSV emission and a small reader for plotting

#pragma once

#include <charconv>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "optocav/errors.hpp"

namespace optocav::csv {

class MalformedCSV : public Error {
public:
    using Error::Error;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& column)
        : Error("column '" + column + "' not found in CSV"), column_(column) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

inline constexpr std::string_view kTimeSeriesHeader =
    "t,delta_p_num,delta_p_eq8,delta_p_eq9,n_b,n_c,trace_error,min_eig";

/// Shortest round-trip text, capped at 12 significant digits.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    const auto capped = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    const std::string capped_text(buf, capped.ptr);
    if (std::strtod(capped_text.c_str(), nullptr) != v) return capped_text;
    const auto shortest = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, shortest.ptr);
}

inline std::string format_cell(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw MissingColumn(name);
    }
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

/// Reads a numeric CSV with a header row; empty cells become nullopt.
inline Table read_table(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw MalformedCSV("CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (auto f : detail::split(line)) t.header.emplace_back(f);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split(line);
        if (fields.size() != t.header.size())
            throw MalformedCSV("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()));
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            if (f.empty()) {
                row.emplace_back();
                continue;
            }
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size())
                throw MalformedCSV("line " + std::to_string(line_no) + ": non-numeric field '" + std::string(f) + "'");
            row.emplace_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table read_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_table(in);
}

} // namespace optocav::csv
