#include "ja/prompt/stage1.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <utility>

#include "ja/core/text.hpp"
#include "ja/prompt/errors.hpp"
#include "segment_heading.hpp"

namespace ja {
namespace {

constexpr std::array<CueField, 3> kCoreFields = {
    CueField::kGaze, CueField::kAction, CueField::kVocalisation};

std::string marker(std::size_t number, const SegmentRef& seg) {
  return "Segment " + std::to_string(number) + " (" +
         text::format_timestamp(seg.start_s) + "\xE2\x80\x93" +
         text::format_timestamp(seg.end_s) + ")";
}

// "Parent", "Parent:", "[Child]", "Child's behaviour:" all select a role when
// nothing follows the colon.
std::optional<Role> role_heading(std::string_view line) {
  std::string_view s = text::trim(line);
  if (s.ends_with(':')) s.remove_suffix(1);
  else if (s.find(':') != std::string_view::npos) return std::nullopt;
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = s.substr(1, s.size() - 2);
  }
  if (auto role = parse_role(s)) return role;
  for (Role role : {Role::kParent, Role::kChild}) {
    const std::string possessive = std::string(to_string(role)) + "'s";
    if (text::istarts_with(s, possessive) && s.size() < 32) return role;
  }
  return std::nullopt;
}

struct FieldLine {
  CueField field;
  std::string value;
};

std::optional<FieldLine> field_line(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view key = text::trim(line.substr(0, colon));
  // "1. Gaze:" style numbering
  while (!key.empty() && (std::isdigit(static_cast<unsigned char>(key.front())) ||
                          key.front() == '.' || key.front() == ' ')) {
    key.remove_prefix(1);
  }
  const auto field = parse_cue_field(key);
  if (!field) return std::nullopt;
  return FieldLine{*field, std::string(text::trim(line.substr(colon + 1)))};
}

struct Block {
  std::size_t number = 0;
  std::vector<std::string> lines;
};

}  // namespace

RenderedPrompt render_stage1_prompt(std::span<const SegmentRef> segments,
                                    const TemplateStore& templates,
                                    const Stage1Options& options) {
  if (segments.empty()) {
    throw invalid_input("description prompt needs at least one segment");
  }
  std::string engagement;
  if (options.engagement) {
    engagement = templates.get(kStage1EngagementTemplate);
    while (!engagement.empty() && engagement.back() == '\n') {
      engagement.pop_back();
    }
  }
  std::vector<std::string> markers;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    markers.push_back(marker(i + 1, segments[i]));
  }

  RenderedPrompt prompt;
  prompt.stage = Stage::kDescribe;
  prompt.text = fill_template(
      templates.get(kStage1Template),
      {{"part_count", options.engagement ? "four" : "three"},
       {"engagement", engagement},
       {"segments", "\n" + text::join(markers, "\n")}});
  prompt.segments.assign(segments.begin(), segments.end());
  return prompt;
}

void Stage1Parse::throw_if_issues() const {
  if (issues.empty()) return;
  const auto& issue = issues.front();
  if (issue.kind == ErrorKind::kFieldMissing && issue.role && issue.field) {
    throw FieldMissingError(issue.segment_number, *issue.role, *issue.field);
  }
  throw StructureError(issue.message);
}

Stage1Parse parse_stage1_response(const std::string& raw,
                                  std::span<const SegmentRef> segments,
                                  bool engagement) {
  if (text::trim(raw).empty()) {
    throw ParseError("empty description response", raw);
  }

  // Lines before the first segment heading form an implicit block. It is
  // segment 1 when the response has no headings at all, preamble otherwise.
  std::vector<Block> blocks(1, Block{1, {}});
  bool any_heading = false;
  bool any_role = false;
  for (std::string_view line : text::split_lines(raw)) {
    const std::string clean = text::strip_markdown(line);
    if (clean.empty()) continue;
    if (const auto number = segment_heading_number(clean)) {
      blocks.push_back(Block{*number, {}});
      any_heading = true;
      continue;
    }
    if (role_heading(clean)) any_role = true;
    blocks.back().lines.push_back(clean);
  }
  if (!any_role) {
    throw StructureError(
        "description response has no Parent/Child role headings");
  }
  if (any_heading) blocks.erase(blocks.begin());

  Stage1Parse result;
  std::map<std::size_t, BehaviourRecord> by_number;
  for (const auto& block : blocks) {
    const std::size_t n = block.number;
    if (n == 0 || n > segments.size()) {
      result.issues.push_back({ErrorKind::kStructure, n, std::nullopt,
                               std::nullopt,
                               "segment " + std::to_string(n) +
                                   " was not part of the prompt"});
      continue;
    }

    std::map<std::pair<Role, CueField>, std::string> values;
    std::optional<Role> role;
    bool saw_role = false;
    for (const auto& line : block.lines) {
      if (const auto r = role_heading(line)) {
        role = r;
        saw_role = true;
        continue;
      }
      const auto f = field_line(line);
      if (!f || !role) continue;
      values[{*role, f->field}] = f->value;
    }
    if (!saw_role) {
      result.issues.push_back({ErrorKind::kStructure, n, std::nullopt,
                               std::nullopt,
                               "segment " + std::to_string(n) +
                                   " has no Parent/Child role headings"});
      continue;
    }

    BehaviourRecord record;
    record.segment = segments[n - 1];
    bool complete = true;
    for (Role r : {Role::kParent, Role::kChild}) {
      auto& cues = record.of(r);
      for (CueField field : kCoreFields) {
        const auto it = values.find({r, field});
        if (it == values.end() || it->second.empty()) {
          result.issues.push_back({ErrorKind::kFieldMissing, n, r, field,
                                   FieldMissingError(n, r, field).what()});
          complete = false;
          continue;
        }
        switch (field) {
          case CueField::kGaze: cues.gaze = it->second; break;
          case CueField::kAction: cues.action = it->second; break;
          default:
            if (!is_none_token(it->second)) cues.vocalisation = it->second;
        }
      }
      const auto eng = values.find({r, CueField::kEngagement});
      if (eng != values.end() && !eng->second.empty()) {
        cues.engagement = eng->second;
      } else if (engagement) {
        result.issues.push_back(
            {ErrorKind::kFieldMissing, n, r, CueField::kEngagement,
             FieldMissingError(n, r, CueField::kEngagement).what()});
        complete = false;
      }
    }
    if (!complete) continue;
    if (by_number.count(n)) {
      result.warnings.push_back("segment " + std::to_string(n) +
                                " described twice; keeping the last");
    }
    by_number[n] = std::move(record);
  }

  for (std::size_t n = 1; n <= segments.size(); ++n) {
    const bool reported = std::any_of(
        result.issues.begin(), result.issues.end(),
        [n](const ParseIssue& i) { return i.segment_number == n; });
    if (!by_number.count(n) && !reported) {
      result.issues.push_back({ErrorKind::kStructure, n, std::nullopt,
                               std::nullopt,
                               "segment " + std::to_string(n) +
                                   " missing from response"});
    }
  }
  for (auto& [n, record] : by_number) {
    for (auto& w : check_record_shape(record)) result.warnings.push_back(w);
    result.records.push_back(std::move(record));
  }
  return result;
}

std::string emit_stage1_response(std::span<const BehaviourRecord> records) {
  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (i) out += '\n';
    out += marker(i + 1, rec.segment) + '\n';
    for (Role role : {Role::kParent, Role::kChild}) {
      const auto& cues = rec.of(role);
      out += role == Role::kParent ? "Parent:\n" : "Child:\n";
      out += "Gaze: " + cues.gaze + '\n';
      out += "Action: " + cues.action + '\n';
      out += "Vocalisation: " + field_text(cues, CueField::kVocalisation) +
             '\n';
      if (cues.engagement) out += "Engagement: " + *cues.engagement + '\n';
    }
  }
  return out;
}

}  // namespace ja
