#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace shutter::csv
{
//! Shortest decimal string that parses back to exactly \p value.
std::string format_number(double value);

//! Inverse of format_number; throws ConfigError on trailing garbage.
double parse_number(std::string_view text);

/*!
 * A header row, data rows of string fields, and optional trailing
 * "# ..." summary lines.
 *
 * Fields never contain commas or newlines, so no quoting is done. Writing
 * a parsed table reproduces the input byte for byte.
 */
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> trailer;  //!< comment text without the "# "

    void add_row(std::vector<std::string> row);
};

void write(std::ostream& os, Table const& table);
std::string to_string(Table const& table);

//! Throws ConfigError with the offending line number on ragged rows.
Table read(std::string_view text);

}  // namespace shutter::csv
