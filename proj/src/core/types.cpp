#include "ja/core/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "ja/error.hpp"

namespace ja {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kFieldMissing: return "field-missing";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kExemplarGap: return "exemplar-gap";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInvalidLabel: return "invalid-label";
    case ErrorKind::kBackendUnavailable: return "backend-unavailable";
    case ErrorKind::kCredential: return "credential";
    case ErrorKind::kCoverage: return "coverage";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kVersion: return "version";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

std::string_view to_string(AgeBand band) {
  switch (band) {
    case AgeBand::k0to2: return "0-2";
    case AgeBand::k2to4: return "2-4";
    case AgeBand::k4to6: return "4-6";
    case AgeBand::k6to8: return "6-8";
  }
  return "";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::kBehaviourGuidance: return "behaviour_guidance";
    case Category::kLanguageCognitive: return "language_cognitive";
    case Category::kDailyLife: return "daily_life";
  }
  return "";
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kStrong: return "Strong";
    case Label::kModerate: return "Moderate";
    case Label::kPoor: return "Poor";
  }
  return "";
}

std::string_view to_string(Mark mark) {
  return mark == Mark::kStrong ? "Strong" : "Poor";
}

std::optional<AgeBand> parse_age_band(std::string_view text) {
  std::string ascii(text);
  // U+2013 EN DASH
  if (const auto pos = ascii.find("\xE2\x80\x93"); pos != std::string::npos) {
    ascii.replace(pos, 3, "-");
  }
  for (AgeBand band :
       {AgeBand::k0to2, AgeBand::k2to4, AgeBand::k4to6, AgeBand::k6to8}) {
    if (ascii == to_string(band)) return band;
  }
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view text) {
  for (Category c : {Category::kBehaviourGuidance, Category::kLanguageCognitive,
                     Category::kDailyLife}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<Label> parse_label(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "strong") return Label::kStrong;
  if (lower == "moderate") return Label::kModerate;
  if (lower == "poor") return Label::kPoor;
  return std::nullopt;
}

std::optional<Mark> parse_mark(std::string_view text) {
  const auto label = parse_label(text);
  if (!label || *label == Label::kModerate) return std::nullopt;
  return *label == Label::kStrong ? Mark::kStrong : Mark::kPoor;
}

}  // namespace ja
