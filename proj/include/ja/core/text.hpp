#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ja::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
std::vector<std::string_view> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Removes markdown decoration a model may wrap around a line: leading
// heading hashes, bullet markers, emphasis asterisks/underscores.
std::string strip_markdown(std::string_view line);

// "mm:ss" with fractional seconds kept when present, e.g. 00:05, 02:12.3
std::string format_timestamp(double seconds);

}  // namespace ja::text
