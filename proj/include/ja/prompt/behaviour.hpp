#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ja/core/types.hpp"

namespace ja {

enum class Role { kParent, kChild };

// Behavioural cue dimensions. Engagement is an optional fourth cue that is
// only rendered when explicitly enabled.
enum class CueField { kGaze, kAction, kVocalisation, kEngagement };

inline constexpr std::string_view kNoneToken = "None";

std::string_view to_string(Role role);
std::string_view to_string(CueField field);
std::optional<Role> parse_role(std::string_view text);
// Accepts both "vocalisation" and "vocalization"; case-insensitive.
std::optional<CueField> parse_cue_field(std::string_view text);

struct CueSentences {
  std::string gaze;
  std::string action;
  // std::nullopt is the None token: no vocalisation in the segment.
  std::optional<std::string> vocalisation;
  std::optional<std::string> engagement;

  bool operator==(const CueSentences&) const = default;
};

struct BehaviourRecord {
  SegmentRef segment;
  CueSentences parent;
  CueSentences child;

  const CueSentences& of(Role role) const {
    return role == Role::kParent ? parent : child;
  }
  CueSentences& of(Role role) {
    return role == Role::kParent ? parent : child;
  }
  bool operator==(const BehaviourRecord&) const = default;
};

// Text of one cue for one role; vocalisation yields the None token when
// absent and engagement yields an empty string when absent.
std::string field_text(const CueSentences& cues, CueField field);

// True when `text` spells the None token ("none", "None.", " NONE ").
bool is_none_token(std::string_view text);

// Heuristic subject-verb-object checks: gaze and action must be non-empty
// and open with "The parent" / "The child" matching the role. Returns one
// message per violation; an empty result means the record looks well formed.
std::vector<std::string> check_record_shape(const BehaviourRecord& record);

}  // namespace ja
