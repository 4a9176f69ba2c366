#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemiq/qgen.hpp"

namespace chemiq {

// --- provider configuration --------------------------------------------------

struct ProviderConfig {
  std::string name;      // label recorded in transcripts
  std::string model;     // model identifier sent to the service
  std::string endpoint;  // chat-completions URL; empty for the mock provider

  std::string api_key_env;       // environment variable holding the credential
  std::string reasoning_effort;  // "low" | "medium" | "high"; empty = unset
  int thinking_budget = -1;      // reasoning token budget; -1 = unset
  int max_output_tokens = 0;     // 0 = provider default
  int timeout_s = 600;
  int max_concurrent = 4;
  int retries = 2;  // resubmissions after the first attempt

  std::string mock_fixture;  // path to a response fixture; non-empty selects the mock

  // "effort=high", "budget=1024", or "none"
  std::string reasoning_setting() const;

  // throws invalid_argument when both reasoning controls are set, or when
  // neither an endpoint nor a fixture is given
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static ProviderConfig from_json(const nlohmann::ordered_json& j);
};

// --- transcripts -------------------------------------------------------------

struct Transcript {
  std::string question_id;
  std::string model;
  std::string reasoning;
  std::string output;  // empty when error is set
  long reasoning_tokens = 0;
  long output_tokens = 0;
  int attempts = 0;
  std::string error;  // empty on success
  long wall_ms = 0;

  nlohmann::ordered_json to_json() const;
  static Transcript from_json(const nlohmann::ordered_json& j);
};

std::string transcripts_to_jsonl(const std::vector<Transcript>& transcripts);
std::vector<Transcript> transcripts_from_jsonl(const std::string& text);

// Reads a transcript log, tolerating interruption: a final line without its
// newline is a torn write and is discarded. Missing file -> empty.
std::vector<Transcript> load_transcripts(const std::string& path);

// --- providers ---------------------------------------------------------------

struct ProviderResponse {
  std::string text;
  long reasoning_tokens = 0;
  long output_tokens = 0;
};

struct ProviderError : std::runtime_error {
  ProviderError(const std::string& what, bool retryable_)
      : std::runtime_error(what), retryable(retryable_) {}
  bool retryable;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderResponse complete(const QuestionInstance& q) = 0;
  virtual const std::string& model() const = 0;
  virtual std::string reasoning_setting() const { return "none"; }
  // deterministic providers get wall_ms = 0 so reruns are byte-identical
  virtual bool deterministic() const { return false; }
};

// Replays canned responses from a fixture file:
//   {"schema": "chemiq-mock/1",
//    "responses": {"<question id>": {"output": "...", "fail_times": 0,
//                                    "reasoning_tokens": 0, "output_tokens": 0}}}
// The first fail_times calls for an id raise a retryable error. Ids without an
// entry raise a terminal error.
class MockProvider : public Provider {
 public:
  explicit MockProvider(const std::string& fixture_path);
  ~MockProvider() override;

  ProviderResponse complete(const QuestionInstance& q) override;
  const std::string& model() const override;
  bool deterministic() const override { return true; }

  // how often an id was asked (test hook)
  int calls(const std::string& question_id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Generic chat-completions client: POST {model, messages, controls} with a
// bearer token from the configured environment variable.
class HttpChatProvider : public Provider {
 public:
  explicit HttpChatProvider(const ProviderConfig& cfg);
  ~HttpChatProvider() override;

  ProviderResponse complete(const QuestionInstance& q) override;
  const std::string& model() const override;
  std::string reasoning_setting() const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Selects mock vs http from the config. Credentials are checked here so a
// missing key aborts before any request is sent.
std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg);

// --- batch execution ---------------------------------------------------------

struct RunOptions {
  std::string transcripts_path;  // durable log, appended as answers arrive
  int max_concurrent = 4;
  int retries = 2;
};

// Asks every question not already answered in the log. Failed requests are
// retried up to opts.retries more times; a terminal failure still produces a
// Transcript. Returns one Transcript per question, in question order.
std::vector<Transcript> run_batch(const std::vector<QuestionInstance>& questions,
                                  Provider& provider, const RunOptions& opts);

// --- token accounting --------------------------------------------------------

struct TokenSummary {
  std::string category;
  std::string variant;
  int n = 0;
  double mean_output_tokens = 0.0;
  double mean_reasoning_tokens = 0.0;
};

// Per (category, variant) means over successful transcripts, in first-seen
// question order. Categories with no transcripts are omitted.
std::vector<TokenSummary> summarize_tokens(const std::vector<QuestionInstance>& questions,
                                           const std::vector<Transcript>& transcripts);

}  // namespace chemiq
