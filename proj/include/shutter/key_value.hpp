#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shutter
{
//---------------------------------------------------------------------------//
/*!
 * Flat "key = value" configuration text.
 *
 * Blank lines and lines whose first non-blank character is '#' are ignored;
 * a '#' after a value starts a trailing comment. Every key may appear once.
 * Accessors mark keys as used, and \c finish() rejects any key that no
 * accessor asked for, so typos surface as errors instead of silent defaults.
 * All failures throw ConfigError quoting the source line.
 */
class KeyValueFile
{
  public:
    static KeyValueFile parse(std::string_view text,
                              std::string source = "<string>");
    static KeyValueFile load(std::filesystem::path const& path);

    bool contains(std::string const& key) const;

    std::string text(std::string const& key, std::string fallback);
    double number(std::string const& key, double fallback);
    std::uint64_t count(std::string const& key, std::uint64_t fallback);
    //! Comma-separated numbers
    std::vector<double> numbers(std::string const& key,
                                std::vector<double> fallback);

    //! Throws ConfigError if any key was never read
    void finish() const;

  private:
    struct Entry
    {
        std::string value;
        std::size_t line;
        bool used = false;
    };

    std::optional<std::string_view> take(std::string const& key);
    [[noreturn]] void fail(std::string const& key, std::string const& why) const;

    std::string source_;
    std::map<std::string, Entry> entries_;
};

}  // namespace shutter
