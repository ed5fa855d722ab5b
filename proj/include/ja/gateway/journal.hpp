#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ja/gateway/backend.hpp"

namespace ja {

// One line of a run journal. Failed invocations are journalled too, with
// `error_kind` set and no raw text.
struct JournalEntry {
  std::string run_id;
  std::string request_hash;
  std::string stage;
  std::string model;
  std::string backend_id;
  int attempt_count = 1;
  std::int64_t latency_ms = 0;
  std::optional<std::string> raw_text;
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;

  bool ok() const { return raw_text.has_value(); }
  bool operator==(const JournalEntry&) const = default;
};

nlohmann::json to_json(const JournalEntry& entry);
JournalEntry journal_entry_from_json(const nlohmann::json& j);

// Append-only JSONL writer. append() is serialised and flushes each line.
class Journal {
 public:
  explicit Journal(const std::filesystem::path& path);
  void append(const JournalEntry& entry);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

// Reads a journal file; a missing file reads as empty. Throws a validation
// error naming the line for malformed content.
std::vector<JournalEntry> read_journal(const std::filesystem::path& path);

// Latest successful response per request hash.
class JournalIndex {
 public:
  JournalIndex() = default;
  explicit JournalIndex(const std::vector<JournalEntry>& entries);
  const JournalEntry* find(const std::string& hash) const;
  std::size_t size() const { return by_hash_.size(); }

 private:
  std::map<std::string, JournalEntry> by_hash_;
};

// Answers requests from a journal without any network access. A request
// absent from the journal fails with a non-transient BackendError.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(JournalIndex index) : index_(std::move(index)) {}
  std::string id() const override { return "replay"; }
  BackendReply call(const ModelRequest& request) override;

 private:
  JournalIndex index_;
};

}  // namespace ja
