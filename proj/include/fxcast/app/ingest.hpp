#pragma once

#include <fxcast/error.hpp>
#include <fxcast/series.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fxcast::app {

class MissingColumn : public DataError {
public:
    explicit MissingColumn(const std::string& column) : DataError("missing column '" + column + "'"), column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

class UnparseableDate : public DataError {
public:
    UnparseableDate(const std::string& text, std::size_t line)
        : DataError("unparseable date '" + text + "' on line " + std::to_string(line)), text_(text) {}
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

class NonPositiveRate : public DataError {
public:
    NonPositiveRate(const std::string& text, std::size_t line)
        : DataError("non-positive or invalid rate '" + text + "' on line " + std::to_string(line)) {}
};

class DuplicateDate : public DataError {
public:
    explicit DuplicateDate(const std::string& date) : DataError("duplicate date " + date), date_(date) {}
    const std::string& date() const { return date_; }

private:
    std::string date_;
};

class FileError : public DataError {
public:
    explicit FileError(const std::string& what) : DataError(what) {}
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') cell.push_back(c);
    }
    out.push_back(cell);
    for (auto& s : out) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    }
    return out;
}

}  // namespace detail

/// Reads a header-led CSV of ISO dates and positive rates. Rows are sorted by date.
inline PriceSeries parse_price_csv(std::istream& in, const std::string& date_column, const std::string& value_column) {
    std::string line;
    if (!std::getline(in, line)) throw FileError("empty CSV input");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
    const auto header = detail::split_csv_line(line);
    const auto find = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw MissingColumn(name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t di = find(date_column), vi = find(value_column);

    std::vector<std::pair<Date, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() <= std::max(di, vi)) throw DataError("short row on line " + std::to_string(line_no));
        Date d;
        if (!parse_iso_date(cells[di], d)) throw UnparseableDate(cells[di], line_no);
        double v = 0.0;
        const auto& text = cells[vi];
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !(v > 0.0) || !std::isfinite(v))
            throw NonPositiveRate(text, line_no);
        rows.emplace_back(d, v);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first) throw DuplicateDate(to_iso_string(rows[i].first));
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& [d, v] : rows) {
        dates.push_back(d);
        values.push_back(v);
    }
    return PriceSeries(std::move(dates), std::move(values));
}

inline PriceSeries ingest_csv(const std::string& path, const std::string& date_column = "date",
                              const std::string& value_column = "rate") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path);
    return parse_price_csv(in, date_column, value_column);
}

/// 64-bit FNV-1a, used to fingerprint inputs and configs in report provenance.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fxcast::app
