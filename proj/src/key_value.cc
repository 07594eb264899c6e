#include "shutter/key_value.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "shutter/csv.hpp"
#include "shutter/error.hpp"

namespace shutter
{
namespace
{
std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source)
{
    KeyValueFile result;
    result.source_ = std::move(source);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto const hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        auto const where = result.source_ + ":" + std::to_string(line_no);
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ConfigError(where + ": expected 'key = value', got '"
                              + std::string(line) + "'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError(where + ": missing key before '='");
        if (value.empty())
            throw ConfigError(where + ": missing value for '" + key + "'");
        auto [it, inserted]
            = result.entries_.emplace(key, Entry{std::move(value), line_no});
        if (!inserted)
        {
            throw ConfigError(where + ": duplicate key '" + key
                              + "' (first set on line "
                              + std::to_string(it->second.line) + ")");
        }
    }
    return result;
}

KeyValueFile KeyValueFile::load(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.string());
}

bool KeyValueFile::contains(std::string const& key) const
{
    return entries_.count(key) != 0;
}

std::optional<std::string_view> KeyValueFile::take(std::string const& key)
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    it->second.used = true;
    return it->second.value;
}

void KeyValueFile::fail(std::string const& key, std::string const& why) const
{
    auto const& entry = entries_.at(key);
    throw ConfigError(source_ + ":" + std::to_string(entry.line) + ": '" + key
                      + "': " + why);
}

std::string KeyValueFile::text(std::string const& key, std::string fallback)
{
    auto v = take(key);
    return v ? std::string(*v) : fallback;
}

double KeyValueFile::number(std::string const& key, double fallback)
{
    auto v = take(key);
    if (!v)
        return fallback;
    try
    {
        return csv::parse_number(*v);
    }
    catch (ConfigError const&)
    {
        fail(key, "expected a number, got '" + std::string(*v) + "'");
    }
}

std::uint64_t KeyValueFile::count(std::string const& key, std::uint64_t fallback)
{
    auto v = take(key);
    if (!v)
        return fallback;
    std::uint64_t value = 0;
    auto const [end, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
    if (ec == std::errc{} && end == v->data() + v->size())
        return value;
    // Accept integral floating notation such as 1e6
    try
    {
        double const d = csv::parse_number(*v);
        if (d >= 0 && d < 1.8e19 && d == double(std::uint64_t(d)))
            return std::uint64_t(d);
    }
    catch (ConfigError const&)
    {
    }
    fail(key, "expected a non-negative integer, got '" + std::string(*v) + "'");
}

std::vector<double> KeyValueFile::numbers(std::string const& key,
                                          std::vector<double> fallback)
{
    auto v = take(key);
    if (!v)
        return fallback;
    std::vector<double> result;
    std::string_view rest = *v;
    while (true)
    {
        auto const comma = rest.find(',');
        auto const item = trim(rest.substr(0, comma));
        try
        {
            result.push_back(csv::parse_number(item));
        }
        catch (ConfigError const&)
        {
            fail(key, "bad list element '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }
    return result;
}

void KeyValueFile::finish() const
{
    for (auto const& [key, entry] : entries_)
    {
        if (!entry.used)
        {
            throw ConfigError(source_ + ":" + std::to_string(entry.line)
                              + ": unknown key '" + key + "'");
        }
    }
}

}  // namespace shutter
