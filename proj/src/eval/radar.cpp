#include "ja/eval/radar.hpp"

#include <cstdio>

#include "ja/core/text.hpp"
#include "ja/error.hpp"

namespace ja {
namespace {

using nlohmann::json;

std::array<double, 9> series_values(const AlignmentReport& r) {
  std::array<double, 9> v{};
  for (Label label : kAllLabels) {
    const auto& m = r.of(label);
    const std::size_t base = index_of(label) * 3;
    v[base] = m.precision;
    v[base + 1] = m.recall;
    v[base + 2] = m.f1;
  }
  return v;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

const std::vector<std::string>& radar_axes() {
  static const std::vector<std::string> axes = [] {
    std::vector<std::string> out;
    for (Label label : kAllLabels) {
      const std::string name = text::to_lower(to_string(label));
      for (const char* metric : {"precision", "recall", "f1"}) {
        out.push_back(name + "." + metric);
      }
    }
    return out;
  }();
  return axes;
}

json export_radar(std::span<const AlignmentReport> reports) {
  if (reports.empty()) throw invalid_input("radar export needs a report");
  json series = json::array();
  json full = json::array();
  for (const auto& r : reports) {
    series.push_back({{"rater_id", r.rater_id},
                      {"condition", to_string(r.condition)},
                      {"model_name", r.model_name},
                      {"values", series_values(r)}});
    full.push_back(to_json(r));
  }
  return {{"schema_version", 1},
          {"axes", radar_axes()},
          {"series", series},
          {"reports", full}};
}

std::vector<AlignmentReport> parse_radar(const json& document) {
  if (!document.is_object() || !document.contains("reports") ||
      !document.at("reports").is_array()) {
    throw ValidationError("radar.reports", "expected an array");
  }
  std::vector<AlignmentReport> out;
  const auto& reports = document.at("reports");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out.push_back(alignment_from_json(reports[i],
                                      "radar.reports[" + std::to_string(i) + "]"));
  }
  if (document.contains("series")) {
    const auto& series = document.at("series");
    if (!series.is_array() || series.size() != out.size()) {
      throw ValidationError("radar.series", "does not match reports");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto expected = series_values(out[i]);
      const auto& values = series[i].at("values");
      for (std::size_t k = 0; k < expected.size(); ++k) {
        if (values.at(k).get<double>() != expected[k]) {
          throw ValidationError("radar.series[" + std::to_string(i) +
                                    "].values[" + std::to_string(k) + "]",
                                "disagrees with the report");
        }
      }
    }
  }
  return out;
}

std::string radar_summary_table(std::span<const AlignmentReport> reports) {
  std::string out = pad("rater", 10) + pad("condition", 16);
  for (const char* h : {"S.P", "S.R", "S.F1", "M.P", "M.R", "M.F1", "P.P",
                        "P.R", "P.F1", "mac.P", "mac.R", "mac.F1"}) {
    out += pad(h, 7);
  }
  out = std::string(text::trim(out)) + "\n";
  for (const auto& r : reports) {
    std::string line = pad(r.rater_id, 10) + pad(to_string(r.condition), 16);
    for (double v : series_values(r)) line += pad(fixed2(v), 7);
    line += pad(fixed2(r.macro.precision), 7) + pad(fixed2(r.macro.recall), 7) +
            fixed2(r.macro.f1);
    out += line + "\n";
  }
  return out;
}

}  // namespace ja
