#pragma once

#include <chrono>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ja/gateway/backend.hpp"
#include "ja/gateway/journal.hpp"

namespace ja {

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct GatewayOptions {
  std::string run_id;
  RetryPolicy retry;
  int max_parallel = 1;
  // Replaces std::this_thread::sleep_for between retries; tests inject one.
  Sleeper sleeper;
  // Journal to write to; null disables journalling.
  Journal* journal = nullptr;
  // Responses already recorded for this run. Matching requests are answered
  // from here without calling the backend or writing a new entry.
  const JournalIndex* resume = nullptr;
};

// Result of one request inside a batch.
struct InvokeOutcome {
  std::optional<ModelResponse> response;
  std::exception_ptr error;

  bool ok() const { return response.has_value(); }
  // Rethrows the stored error.
  [[noreturn]] void rethrow() const;
};

class Gateway {
 public:
  Gateway(std::shared_ptr<Backend> backend, GatewayOptions options);

  // One request with retries. Transient failures back off exponentially
  // (base, 2*base, 4*base, ... capped at max_backoff_ms). Exhaustion throws
  // BackendError with transient() false; credential failures propagate at
  // once. Exactly one journal entry is written per call.
  ModelResponse invoke(const ModelRequest& request);

  // Runs `requests` with at most max_parallel in flight. Outcomes and
  // journal entries are in request order whatever the completion order.
  std::vector<InvokeOutcome> invoke_all(std::span<const ModelRequest> requests);

  const std::string& backend_id() const { return backend_id_; }

 private:
  ModelResponse attempt_loop(const ModelRequest& request,
                             const std::string& hash);
  JournalEntry entry_for(const ModelRequest& request, const std::string& hash,
                         const InvokeOutcome& outcome) const;
  InvokeOutcome run_one(const ModelRequest& request, const std::string& hash,
                        bool& fresh);

  std::shared_ptr<Backend> backend_;
  GatewayOptions options_;
  std::string backend_id_;
};

}  // namespace ja
