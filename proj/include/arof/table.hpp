// SPDX-License-Identifier: Apache-2.0
//
// Rectangular result tables and their comma-delimited text form: a header
// row of column names, a units row, then data rows. Numbers are written with
// 10 significant digits; text cells are always double-quoted so a reader can
// tell "3" the string from 3 the number.

#ifndef AROF_TABLE_HPP
#define AROF_TABLE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace arof
{

using Cell = std::variant<double, std::string>;

struct Column
{
    std::string name;
    std::string unit;

    bool operator==(const Column &) const = default;
};

struct ResultTable
{
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    ResultTable() = default;
    explicit ResultTable(std::vector<Column> cols) : columns(std::move(cols)) {}

    void add_row(std::vector<Cell> row);
    std::size_t column_index(std::string_view name) const;
    double number(std::size_t row, std::string_view column) const;
    void validate() const;

    bool operator==(const ResultTable &) const = default;
};

std::string format_number(double v);

std::string to_csv(const ResultTable &table);
ResultTable parse_csv(std::string_view text);

void emit(const ResultTable &table, const std::filesystem::path &path);
ResultTable read_table(const std::filesystem::path &path);

} // namespace arof

#endif
