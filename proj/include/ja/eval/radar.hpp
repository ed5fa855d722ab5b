#pragma once

#include <span>
#include <string>
#include <vector>

#include "ja/eval/alignment.hpp"

namespace ja {

// Axis names in series order: strong.precision, strong.recall, strong.f1,
// moderate.precision, ..., poor.f1.
const std::vector<std::string>& radar_axes();

// Plot-ready document: one series of 9 values per report (rater x
// condition) plus the full reports so the document parses back losslessly.
// Classes without predictions contribute zeros, never gaps. Throws
// invalid-input for an empty list.
nlohmann::json export_radar(std::span<const AlignmentReport> reports);

// Inverse of export_radar. Throws ValidationError for malformed documents.
std::vector<AlignmentReport> parse_radar(const nlohmann::json& document);

// Fixed-width text table, one row per report, 2-decimal values.
std::string radar_summary_table(std::span<const AlignmentReport> reports);

}  // namespace ja
