#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace opgp {

/// Parses the TOML subset used by scenario files into a JSON tree:
/// key = value pairs, [table] and [[array-of-tables]] headers (dotted names
/// allowed), basic and literal strings, integers, floats, booleans, arrays
/// (may span lines) and inline tables. Errors are InputError with
/// "source:line:" prefixes.
nlohmann::ordered_json parse_toml(std::string_view text, const std::string& source = "<input>");

}  // namespace opgp
