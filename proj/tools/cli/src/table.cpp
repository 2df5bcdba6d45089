#include "table.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace toral::cli {

namespace {

std::string format_double(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct CsvCell {
    int precision;
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return csv_field(s); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v, precision); }
    std::string operator()(const BigInt& v) const { return v.str(); }
};

struct JsonCell {
    int precision;
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
        if (!std::isfinite(v)) return nullptr;
        return nlohmann::ordered_json::parse(format_double(v, precision));
    }
    nlohmann::ordered_json operator()(const BigInt& v) const {
        if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
            return v.convert_to<std::int64_t>();
        }
        return v.str();
    }
};

}  // namespace

void write(const Table& t, std::ostream& os, Format f, int precision) {
    if (f == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << std::visit(CsvCell{precision}, row[i]);
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
            rec[t.columns[i]] = std::visit(JsonCell{precision}, row[i]);
        }
        arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace toral::cli
