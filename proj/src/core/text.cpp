#include "ja/core/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace ja::text {

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && to_lower(a) == to_lower(b);
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('\n', start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view line = s.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string strip_markdown(std::string_view line) {
  std::string_view s = trim(line);
  while (!s.empty() && s.front() == '#') s.remove_prefix(1);
  s = trim(s);
  // Bullets: "-", "*", "+" or U+2022 followed by a space.
  if (s.size() >= 2 && (s[0] == '-' || s[0] == '+' || s[0] == '*') &&
      s[1] == ' ') {
    s = trim(s.substr(2));
  } else if (s.starts_with("\xE2\x80\xA2")) {
    s = trim(s.substr(3));
  }
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && (s[i] == '*' || s[i] == '_') && s[i + 1] == s[i]) {
      ++i;
      continue;
    }
    out += s[i];
  }
  std::string_view t = trim(out);
  while (!t.empty() && (t.front() == '*' || t.front() == '_')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == '*' || t.back() == '_')) t.remove_suffix(1);
  return std::string(trim(t));
}

std::string format_timestamp(double seconds) {
  const long whole_minutes = static_cast<long>(std::floor(seconds / 60.0));
  double rest = seconds - 60.0 * static_cast<double>(whole_minutes);
  char buf[32];
  const double rounded = std::round(rest * 1000.0) / 1000.0;
  if (std::fabs(rounded - std::round(rounded)) < 1e-9) {
    std::snprintf(buf, sizeof buf, "%02ld:%02ld", whole_minutes,
                  static_cast<long>(std::lround(rounded)));
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%02ld:%06.3f", whole_minutes, rounded);
  std::string out(buf);
  while (out.back() == '0') out.pop_back();
  return out;
}

}  // namespace ja::text
