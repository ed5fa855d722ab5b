#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string_view>

#include "ja/core/text.hpp"

namespace ja {

struct SegmentPrefix {
  std::size_t number = 0;
  // Text after the number with one leading ':', '-', en or em dash removed.
  std::string_view rest;
};

// Matches "Segment 12", "Segment 12:", "Segment 12 (00:55–01:00)",
// "segment 3 - Poor". The keyword is case-insensitive.
inline std::optional<SegmentPrefix> segment_prefix(std::string_view line) {
  std::string_view s = text::trim(line);
  if (!text::istarts_with(s, "segment")) return std::nullopt;
  s.remove_prefix(7);
  s = text::trim(s);
  std::size_t digits = 0;
  while (digits < s.size() &&
         std::isdigit(static_cast<unsigned char>(s[digits]))) {
    ++digits;
  }
  if (digits == 0 || digits > 9) return std::nullopt;
  SegmentPrefix out;
  for (std::size_t i = 0; i < digits; ++i) {
    out.number = out.number * 10 + static_cast<std::size_t>(s[i] - '0');
  }
  s.remove_prefix(digits);
  if (!s.empty() && std::isalnum(static_cast<unsigned char>(s.front()))) {
    return std::nullopt;
  }
  s = text::trim(s);
  if (s.starts_with(':') || s.starts_with('-')) {
    s.remove_prefix(1);
  } else if (s.starts_with("\xE2\x80\x93") || s.starts_with("\xE2\x80\x94")) {
    s.remove_prefix(3);
  }
  out.rest = text::trim(s);
  return out;
}

inline std::optional<std::size_t> segment_heading_number(std::string_view line) {
  const auto prefix = segment_prefix(line);
  if (!prefix) return std::nullopt;
  return prefix->number;
}

}  // namespace ja
