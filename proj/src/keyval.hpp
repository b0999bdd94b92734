#pragma once

// Line-oriented key=value reader shared by the config and sweep-spec
// parsers. Not installed; internal to the library.

#include <string>
#include <string_view>
#include <vector>

namespace telesim::detail {

struct KeyVal {
    std::string key;
    std::string value;
    int line = 0; // 1-based, for error messages
};

std::string_view trim(std::string_view s);

// Splits text into key=value entries, dropping '#' comments and blank
// lines. Throws ParseError on a line without '=' or with an empty key.
std::vector<KeyVal> read_keyvals(std::string_view text);

// Strict numeric conversions; `where` goes into the error message.
double to_double(const std::string& s, const std::string& where);
long long to_int(const std::string& s, const std::string& where);
bool to_bool(const std::string& s, const std::string& where);

std::string read_file(const std::string& path); // throws IoError

} // namespace telesim::detail
