#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "toral/algebra.hpp"

namespace toral::cli {

enum class Format { Csv, Json };

using Cell = std::variant<std::monostate, std::string, std::int64_t, double, BigInt>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// CSV with a header line, or a JSON array holding one object per row.
// Doubles are printed with `precision` significant digits in both formats.
void write(const Table& t, std::ostream& os, Format f, int precision);

}  // namespace toral::cli
