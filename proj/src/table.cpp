// SPDX-License-Identifier: Apache-2.0

#include "arof/table.hpp"

#include "arof/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace arof
{

void ResultTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw InvalidInput("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column_index(std::string_view name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name)
            return i;
    throw InvalidInput("no column named '" + std::string(name) + "'");
}

double ResultTable::number(std::size_t row, std::string_view column) const
{
    const auto &cell = rows.at(row).at(column_index(column));
    if (const auto *v = std::get_if<double>(&cell))
        return *v;
    throw InvalidInput("cell in column '" + std::string(column) + "' is not numeric");
}

void ResultTable::validate() const
{
    for (const auto &r : rows)
        if (r.size() != columns.size())
            throw InvalidInput("table is not rectangular");
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace
{

bool needs_quotes(std::string_view s)
{
    if (s.empty())
        return false;
    return s.find_first_of(",\"\n\r") != std::string_view::npos || s.front() == ' ' || s.back() == ' ';
}

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_label_row(std::ostringstream &os, const std::vector<Column> &cols, bool units)
{
    for (std::size_t i = 0; i < cols.size(); ++i)
    {
        if (i)
            os << ',';
        const std::string &s = units ? cols[i].unit : cols[i].name;
        os << (needs_quotes(s) ? quote(s) : s);
    }
    os << '\n';
}

struct Field
{
    std::string text;
    bool quoted = false;
};

// Splits one record starting at pos; advances pos past the line ending.
std::vector<Field> read_record(std::string_view text, std::size_t &pos, std::size_t line)
{
    std::vector<Field> fields;
    Field cur;
    bool in_quotes = false;
    bool after_quote = false;
    while (pos < text.size())
    {
        const char c = text[pos];
        if (in_quotes)
        {
            if (c == '"')
            {
                if (pos + 1 < text.size() && text[pos + 1] == '"')
                {
                    cur.text += '"';
                    pos += 2;
                    continue;
                }
                in_quotes = false;
                after_quote = true;
            }
            else
                cur.text += c;
            ++pos;
            continue;
        }
        if (c == '\n' || c == '\r')
        {
            pos += (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ? 2 : 1;
            fields.push_back(std::move(cur));
            return fields;
        }
        if (c == ',')
        {
            fields.push_back(std::move(cur));
            cur = Field{};
            after_quote = false;
        }
        else if (c == '"' && cur.text.empty() && !cur.quoted)
        {
            in_quotes = true;
            cur.quoted = true;
        }
        else
        {
            if (after_quote)
                throw InvalidInput("line " + std::to_string(line) + ": text after closing quote");
            cur.text += c;
        }
        ++pos;
    }
    if (in_quotes)
        throw InvalidInput("line " + std::to_string(line) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

Cell to_cell(const Field &f, std::size_t line)
{
    if (f.quoted)
        return f.text;
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(f.text.c_str(), &end);
    if (f.text.empty() || end != f.text.c_str() + f.text.size())
        throw InvalidInput("line " + std::to_string(line) + ": '" + f.text + "' is neither a number nor quoted text");
    return v;
}

} // namespace

std::string to_csv(const ResultTable &table)
{
    table.validate();
    std::ostringstream os;
    write_label_row(os, table.columns, false);
    write_label_row(os, table.columns, true);
    for (const auto &row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                os << ',';
            if (const auto *v = std::get_if<double>(&row[i]))
                os << format_number(*v);
            else
                os << quote(std::get<std::string>(row[i]));
        }
        os << '\n';
    }
    return os.str();
}

ResultTable parse_csv(std::string_view text)
{
    std::size_t pos = 0;
    std::size_t line = 1;
    if (text.empty())
        throw InvalidInput("table text is empty");
    auto header = read_record(text, pos, line++);
    if (pos >= text.size() && header.size() == 1 && header[0].text.empty())
        throw InvalidInput("table has no units row");
    auto units = read_record(text, pos, line++);

    ResultTable t;
    const bool no_columns = header.size() == 1 && header[0].text.empty() && !header[0].quoted;
    if (!no_columns)
    {
        if (units.size() != header.size())
            throw InvalidInput("units row has " + std::to_string(units.size()) + " fields, header has " +
                               std::to_string(header.size()));
        for (std::size_t i = 0; i < header.size(); ++i)
            t.columns.push_back({header[i].text, units[i].text});
    }
    while (pos < text.size())
    {
        auto fields = read_record(text, pos, line);
        if (fields.size() != t.columns.size())
            throw InvalidInput("line " + std::to_string(line) + ": expected " + std::to_string(t.columns.size()) +
                               " fields, got " + std::to_string(fields.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto &f : fields)
            row.push_back(to_cell(f, line));
        t.rows.push_back(std::move(row));
        ++line;
    }
    return t;
}

void emit(const ResultTable &table, const std::filesystem::path &path)
{
    const std::string text = to_csv(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError(path.string(), "write failed");
}

ResultTable read_table(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path.string(), "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

} // namespace arof
