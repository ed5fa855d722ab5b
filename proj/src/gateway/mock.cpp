#include "ja/gateway/mock.hpp"

#include <array>
#include <cstdint>

#include "ja/core/text.hpp"
#include "ja/gateway/errors.hpp"
#include "ja/prompt/stage1.hpp"
#include "ja/prompt/stage2.hpp"

namespace ja {
namespace {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 step; portable and fully specified.
std::uint64_t next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <std::size_t N>
const char* pick(std::uint64_t& state, const std::array<const char*, N>& pool) {
  return pool[next(state) % N];
}

bool chance(std::uint64_t& state, int numerator, int denominator) {
  return static_cast<int>(next(state) % static_cast<std::uint64_t>(denominator)) <
         numerator;
}

constexpr std::array<const char*, 3> kChildGazeToParent = {
    "The child looked at the parent's face.",
    "The child glanced at the parent.",
    "The child shifted gaze between the toy and the parent."};
constexpr std::array<const char*, 4> kChildGazeAway = {
    "The child stared at the blocks.", "The child looked at the toy truck.",
    "The child looked out of the window.", "The child watched the rolling ball."};
constexpr std::array<const char*, 4> kChildAction = {
    "The child reached towards the puzzle pieces.",
    "The child stacked a block on the tower.",
    "The child pushed the toy truck.", "The child clapped their hands."};
constexpr std::array<const char*, 4> kChildSpeech = {
    "The child said \"ball\".", "The child laughed.",
    "The child asked for more blocks.", "The child named the colour red."};
constexpr std::array<const char*, 4> kParentGaze = {
    "The parent looked at the child.",
    "The parent shifted gaze between the child and the toy.",
    "The parent looked at the blocks.", "The parent looked away for a moment."};
constexpr std::array<const char*, 4> kParentAction = {
    "The parent pointed at the red ball.", "The parent lifted the toy truck.",
    "The parent held out a block.", "The parent sat beside the child."};
constexpr std::array<const char*, 4> kParentSpeech = {
    "The parent said \"Look at this!\"", "The parent asked what colour it was.",
    "The parent praised the child.", "The parent counted the blocks aloud."};
constexpr std::array<const char*, 3> kChildEngagement = {
    "The child stayed involved in the game.",
    "The child drifted in and out of the activity.",
    "The child kept playing alone."};
constexpr std::array<const char*, 2> kParentEngagement = {
    "The parent followed the child's lead.",
    "The parent directed the activity."};

bool mentions_parent(const std::string& sentence) {
  return text::to_lower(sentence).find("parent") != std::string::npos;
}

}  // namespace

BehaviourRecord mock_describe(const SegmentRef& segment) {
  std::uint64_t state =
      fnv1a(segment.video_id + "#" + std::to_string(segment.index));
  BehaviourRecord r;
  r.segment = segment;
  r.child.gaze = chance(state, 3, 7) ? pick(state, kChildGazeToParent)
                                     : pick(state, kChildGazeAway);
  r.child.action = pick(state, kChildAction);
  if (chance(state, 1, 2)) r.child.vocalisation = pick(state, kChildSpeech);
  r.parent.gaze = pick(state, kParentGaze);
  r.parent.action = pick(state, kParentAction);
  if (chance(state, 2, 5)) r.parent.vocalisation = pick(state, kParentSpeech);
  r.child.engagement = pick(state, kChildEngagement);
  r.parent.engagement = pick(state, kParentEngagement);
  return r;
}

std::vector<JudgementOutput> mock_judge(std::span<const BehaviourRecord> records) {
  std::vector<JudgementOutput> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const bool looks = mentions_parent(r.child.gaze);
    const bool child_speaks = r.child.vocalisation.has_value();
    const bool parent_speaks = r.parent.vocalisation.has_value();
    JudgementOutput o;
    o.segment_index = r.segment.index;
    if (looks && child_speaks) {
      o.label = Label::kStrong;
      o.reasoning_text =
          "The child looked toward the parent and vocalised, showing clear "
          "coordination.";
    } else if (!looks && !child_speaks && parent_speaks) {
      o.label = Label::kPoor;
      o.reasoning_text =
          "The parent made a vocal bid that the child neither answered nor "
          "looked toward.";
    } else {
      o.label = Label::kModerate;
      o.reasoning_text =
          "The child showed some coordination with the parent but not both "
          "gaze and vocal response.";
    }
    o.observation_text =
        r.child.gaze + " " +
        (child_speaks ? *r.child.vocalisation
                      : std::string("The child did not vocalise."));
    out.push_back(std::move(o));
  }
  return out;
}

BackendReply MockBackend::call(const ModelRequest& request) {
  if (request.stage == Stage::kDescribe) {
    const bool engagement =
        request.prompt.text.find("in four parts") != std::string::npos;
    std::vector<BehaviourRecord> records;
    for (const auto& seg : request.prompt.segments) {
      auto r = mock_describe(seg);
      if (!engagement) {
        r.child.engagement.reset();
        r.parent.engagement.reset();
      }
      records.push_back(std::move(r));
    }
    return {emit_stage1_response(records), 0};
  }

  if (!request.prompt.condition) {
    throw BackendError("mock judge needs a prompt condition", false);
  }
  const auto records = read_prompt_records(request.prompt);
  if (records.empty()) {
    throw BackendError("mock judge found no segments in the prompt", false);
  }
  auto outputs = mock_judge(records);
  const Style style = request.prompt.condition->style;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    outputs[i].segment_index = i;
    if (style == Style::kNonReasoning) {
      outputs[i].observation_text.reset();
      outputs[i].reasoning_text.reset();
    }
  }
  return {emit_stage2_response(outputs, style), 0};
}

}  // namespace ja
