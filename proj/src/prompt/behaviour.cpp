#include "ja/prompt/behaviour.hpp"

#include "ja/core/text.hpp"
#include "ja/prompt/errors.hpp"

namespace ja {

std::string_view to_string(Role role) {
  return role == Role::kParent ? "parent" : "child";
}

std::string_view to_string(CueField field) {
  switch (field) {
    case CueField::kGaze: return "gaze";
    case CueField::kAction: return "action";
    case CueField::kVocalisation: return "vocalisation";
    case CueField::kEngagement: return "engagement";
  }
  return "";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text::iequals(text, "parent")) return Role::kParent;
  if (text::iequals(text, "child")) return Role::kChild;
  return std::nullopt;
}

std::optional<CueField> parse_cue_field(std::string_view text) {
  if (text::iequals(text, "gaze")) return CueField::kGaze;
  if (text::iequals(text, "action")) return CueField::kAction;
  if (text::iequals(text, "vocalisation") ||
      text::iequals(text, "vocalization")) {
    return CueField::kVocalisation;
  }
  if (text::iequals(text, "engagement")) return CueField::kEngagement;
  return std::nullopt;
}

std::string field_text(const CueSentences& cues, CueField field) {
  switch (field) {
    case CueField::kGaze: return cues.gaze;
    case CueField::kAction: return cues.action;
    case CueField::kVocalisation:
      return cues.vocalisation ? *cues.vocalisation : std::string(kNoneToken);
    case CueField::kEngagement: return cues.engagement.value_or("");
  }
  return {};
}

bool is_none_token(std::string_view value) {
  std::string_view t = text::trim(value);
  while (!t.empty() && (t.back() == '.' || t.back() == '!')) t.remove_suffix(1);
  return text::iequals(text::trim(t), "none");
}

std::vector<std::string> check_record_shape(const BehaviourRecord& record) {
  std::vector<std::string> problems;
  for (Role role : {Role::kParent, Role::kChild}) {
    const auto& cues = record.of(role);
    const std::string subject =
        role == Role::kParent ? "The parent" : "The child";
    for (CueField field : {CueField::kGaze, CueField::kAction}) {
      const std::string value = field_text(cues, field);
      const std::string where = "segment " +
                                std::to_string(record.segment.index) + " " +
                                std::string(to_string(role)) + " " +
                                std::string(to_string(field));
      if (text::trim(value).empty()) {
        problems.push_back(where + " is empty");
      } else if (!text::istarts_with(value, subject)) {
        problems.push_back(where + " does not open with '" + subject + "'");
      }
    }
    if (cues.vocalisation && text::trim(*cues.vocalisation).empty()) {
      problems.push_back("segment " + std::to_string(record.segment.index) +
                         " " + std::string(to_string(role)) +
                         " vocalisation is empty; use None");
    }
  }
  return problems;
}

FieldMissingError::FieldMissingError(std::size_t segment_number, Role role,
                                     CueField field)
    : Error(ErrorKind::kFieldMissing,
            "segment " + std::to_string(segment_number) + ": missing " +
                std::string(to_string(role)) + " " +
                std::string(to_string(field))),
      segment_number_(segment_number),
      role_(role),
      field_(field) {}

}  // namespace ja
