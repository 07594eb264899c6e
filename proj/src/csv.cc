#include "shutter/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <system_error>

#include "shutter/error.hpp"

namespace shutter::csv
{
namespace
{
std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true)
    {
        auto const comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

void write_fields(std::ostream& os, std::vector<std::string> const& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i > 0)
            os << ',';
        os << fields[i];
    }
    os << '\n';
}

}  // namespace

std::string format_number(double value)
{
    char buffer[64];
    auto const [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{})
    {
        throw NumericError("could not format a floating-point value");
    }
    return std::string(buffer, end);
}

double parse_number(std::string_view text)
{
    double value = 0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    auto const [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || end != last || text.empty())
    {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != header.size())
    {
        throw UsageError("csv row has " + std::to_string(row.size())
                         + " fields, header has "
                         + std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

void write(std::ostream& os, Table const& table)
{
    write_fields(os, table.header);
    for (auto const& row : table.rows)
        write_fields(os, row);
    for (auto const& line : table.trailer)
        os << "# " << line << '\n';
}

std::string to_string(Table const& table)
{
    std::ostringstream os;
    write(os, table);
    return os.str();
}

Table read(std::string_view text)
{
    Table table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size())
    {
        auto const nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
        {
            throw ConfigError("csv line " + std::to_string(line_no + 1)
                              + ": missing LF terminator");
        }
        std::string_view const line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (line.starts_with("# "))
        {
            table.trailer.emplace_back(line.substr(2));
            continue;
        }
        if (!table.trailer.empty())
        {
            throw ConfigError("csv line " + std::to_string(line_no)
                              + ": data after the summary block");
        }
        auto fields = split_fields(line);
        if (!have_header)
        {
            table.header = std::move(fields);
            have_header = true;
        }
        else if (fields.size() != table.header.size())
        {
            throw ConfigError("csv line " + std::to_string(line_no) + ": "
                              + std::to_string(fields.size())
                              + " fields, expected "
                              + std::to_string(table.header.size()));
        }
        else
        {
            table.rows.push_back(std::move(fields));
        }
    }
    if (!have_header)
    {
        throw ConfigError("csv: no header row");
    }
    return table;
}

}  // namespace shutter::csv
