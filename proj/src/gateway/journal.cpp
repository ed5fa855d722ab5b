#include "ja/gateway/journal.hpp"

#include "ja/error.hpp"
#include "ja/gateway/errors.hpp"

namespace ja {

using nlohmann::json;

json to_json(const JournalEntry& e) {
  json j = {{"run_id", e.run_id},
            {"request_hash", e.request_hash},
            {"stage", e.stage},
            {"model", e.model},
            {"backend_id", e.backend_id},
            {"attempt_count", e.attempt_count},
            {"latency_ms", e.latency_ms}};
  j["raw_text"] = e.raw_text ? json(*e.raw_text) : json(nullptr);
  if (e.error_kind) j["error_kind"] = *e.error_kind;
  if (e.error_message) j["error_message"] = *e.error_message;
  return j;
}

JournalEntry journal_entry_from_json(const json& j) {
  JournalEntry e;
  e.run_id = j.at("run_id").get<std::string>();
  e.request_hash = j.at("request_hash").get<std::string>();
  e.stage = j.at("stage").get<std::string>();
  e.model = j.at("model").get<std::string>();
  e.backend_id = j.at("backend_id").get<std::string>();
  e.attempt_count = j.at("attempt_count").get<int>();
  e.latency_ms = j.at("latency_ms").get<std::int64_t>();
  if (const auto it = j.find("raw_text"); it != j.end() && !it->is_null()) {
    e.raw_text = it->get<std::string>();
  }
  if (const auto it = j.find("error_kind"); it != j.end()) {
    e.error_kind = it->get<std::string>();
  }
  if (const auto it = j.find("error_message"); it != j.end()) {
    e.error_message = it->get<std::string>();
  }
  return e;
}

Journal::Journal(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::app) {
  if (!out_) throw io_error("cannot open journal " + path.string());
}

void Journal::append(const JournalEntry& entry) {
  const std::string line = to_json(entry).dump() + "\n";
  std::lock_guard lock(mutex_);
  out_ << line;
  out_.flush();
  if (!out_) throw io_error("failed writing journal " + path_.string());
}

std::vector<JournalEntry> read_journal(const std::filesystem::path& path) {
  std::vector<JournalEntry> entries;
  std::ifstream in(path, std::ios::binary);
  if (!in) return entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      entries.push_back(journal_entry_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ValidationError(path.filename().string() + ":" +
                                std::to_string(number),
                            e.what());
    }
  }
  return entries;
}

JournalIndex::JournalIndex(const std::vector<JournalEntry>& entries) {
  for (const auto& e : entries) {
    if (e.ok()) by_hash_[e.request_hash] = e;
  }
}

const JournalEntry* JournalIndex::find(const std::string& hash) const {
  const auto it = by_hash_.find(hash);
  return it == by_hash_.end() ? nullptr : &it->second;
}

BackendReply ReplayBackend::call(const ModelRequest& request) {
  const auto* entry = index_.find(request_hash(request));
  if (!entry) {
    throw BackendError("request not present in replay journal", false);
  }
  return {*entry->raw_text, entry->latency_ms};
}

}  // namespace ja
