#pragma once

#include <span>
#include <vector>

#include "ja/gateway/backend.hpp"
#include "ja/prompt/behaviour.hpp"

namespace ja {

// Rule of thumb standing in for a judgement model:
//   child gaze mentions the parent and the child vocalises -> Strong
//   child gaze does not mention the parent, the child is silent and the
//   parent vocalises (an unanswered bid) -> Poor
//   anything else -> Moderate
// Outputs carry short observation and reasoning text.
std::vector<JudgementOutput> mock_judge(std::span<const BehaviourRecord> records);

// Deterministic synthetic description of one segment, a pure function of
// its video id and index.
BehaviourRecord mock_describe(const SegmentRef& segment);

// Offline backend. Description requests are answered with mock_describe
// records in the canonical response format; judgement requests with
// mock_judge labels in the prompt's response style. Latency is always 0.
class MockBackend : public Backend {
 public:
  std::string id() const override { return "mock"; }
  BackendReply call(const ModelRequest& request) override;
};

}  // namespace ja
