#include "ja/gateway/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "ja/gateway/errors.hpp"

namespace ja {

void InvokeOutcome::rethrow() const {
  if (error) std::rethrow_exception(error);
  throw Error(ErrorKind::kBackendUnavailable, "invocation produced no response");
}

Gateway::Gateway(std::shared_ptr<Backend> backend, GatewayOptions options)
    : backend_(std::move(backend)), options_(std::move(options)) {
  if (!backend_) throw invalid_input("gateway needs a backend");
  if (options_.max_parallel < 1) throw invalid_input("max_parallel must be >= 1");
  if (options_.retry.max_attempts < 1) {
    throw invalid_input("max_attempts must be >= 1");
  }
  if (!options_.sleeper) {
    options_.sleeper = [](std::chrono::milliseconds ms) {
      std::this_thread::sleep_for(ms);
    };
  }
  backend_id_ = backend_->id();
}

ModelResponse Gateway::attempt_loop(const ModelRequest& request,
                                    const std::string& /*hash*/) {
  const auto& retry = options_.retry;
  std::int64_t backoff = retry.base_backoff_ms;
  for (int attempt = 1;; ++attempt) {
    try {
      BackendReply reply = backend_->call(request);
      return {std::move(reply.raw_text), reply.latency_ms, backend_id_, attempt};
    } catch (const CredentialError& e) {
      throw CredentialError(e.what(), attempt);
    } catch (const BackendError& e) {
      if (!e.transient()) {
        throw BackendError(e.what(), false, e.status(), attempt);
      }
      if (attempt >= retry.max_attempts) {
        throw BackendError(backend_id_ + " unavailable after " +
                               std::to_string(attempt) +
                               " attempts: " + e.what(),
                           false, e.status(), attempt);
      }
      options_.sleeper(std::chrono::milliseconds(
          std::min(backoff, retry.max_backoff_ms)));
      backoff = std::min(backoff * 2, retry.max_backoff_ms);
    }
  }
}

InvokeOutcome Gateway::run_one(const ModelRequest& request,
                               const std::string& hash, bool& fresh) {
  fresh = true;
  InvokeOutcome outcome;
  if (options_.resume) {
    if (const auto* e = options_.resume->find(hash)) {
      fresh = false;
      outcome.response =
          ModelResponse{*e->raw_text, e->latency_ms, e->backend_id,
                        e->attempt_count};
      return outcome;
    }
  }
  try {
    outcome.response = attempt_loop(request, hash);
  } catch (...) {
    outcome.error = std::current_exception();
  }
  return outcome;
}

JournalEntry Gateway::entry_for(const ModelRequest& request,
                                const std::string& hash,
                                const InvokeOutcome& outcome) const {
  JournalEntry entry;
  entry.run_id = options_.run_id;
  entry.request_hash = hash;
  entry.stage = std::string(to_string(request.stage));
  entry.model = request.model_name;
  entry.backend_id = backend_id_;
  if (outcome.response) {
    entry.attempt_count = outcome.response->attempt_count;
    entry.latency_ms = outcome.response->latency_ms;
    entry.raw_text = outcome.response->raw_text;
    return entry;
  }
  try {
    std::rethrow_exception(outcome.error);
  } catch (const BackendError& e) {
    entry.attempt_count = e.attempt_count();
    entry.error_kind = to_string(e.kind());
    entry.error_message = e.what();
  } catch (const CredentialError& e) {
    entry.attempt_count = e.attempt_count();
    entry.error_kind = to_string(e.kind());
    entry.error_message = e.what();
  } catch (const Error& e) {
    entry.error_kind = to_string(e.kind());
    entry.error_message = e.what();
  } catch (const std::exception& e) {
    entry.error_kind = to_string(ErrorKind::kBackendUnavailable);
    entry.error_message = e.what();
  }
  return entry;
}

ModelResponse Gateway::invoke(const ModelRequest& request) {
  validate_request(request);
  const std::string hash = request_hash(request);
  bool fresh = true;
  const InvokeOutcome outcome = run_one(request, hash, fresh);
  if (fresh && options_.journal) {
    options_.journal->append(entry_for(request, hash, outcome));
  }
  if (!outcome.ok()) outcome.rethrow();
  return *outcome.response;
}

std::vector<InvokeOutcome> Gateway::invoke_all(
    std::span<const ModelRequest> requests) {
  const std::size_t n = requests.size();
  std::vector<InvokeOutcome> outcomes(n);
  std::vector<std::string> hashes(n);
  std::vector<char> valid(n, 0), fresh(n, 0), done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      validate_request(requests[i]);
      hashes[i] = request_hash(requests[i]);
      valid[i] = 1;
    } catch (...) {
      outcomes[i].error = std::current_exception();
    }
  }

  std::mutex mutex;
  std::size_t next_to_write = 0;
  std::exception_ptr journal_error;
  // Journal lines go out in request order: each completion flushes the
  // longest finished prefix.
  auto complete = [&](std::size_t i) {
    std::lock_guard lock(mutex);
    done[i] = 1;
    while (next_to_write < n && done[next_to_write]) {
      const std::size_t k = next_to_write++;
      if (!valid[k] || !fresh[k] || !options_.journal || journal_error) continue;
      try {
        options_.journal->append(entry_for(requests[k], hashes[k], outcomes[k]));
      } catch (...) {
        journal_error = std::current_exception();
      }
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      if (valid[i]) {
        bool f = true;
        outcomes[i] = run_one(requests[i], hashes[i], f);
        fresh[i] = f;
      }
      complete(i);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(options_.max_parallel), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (journal_error) std::rethrow_exception(journal_error);
  return outcomes;
}

}  // namespace ja
