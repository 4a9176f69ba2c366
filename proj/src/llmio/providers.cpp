#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <mutex>

#include "chemiq/llmio.hpp"

namespace chemiq {

// --- config ------------------------------------------------------------------

std::string ProviderConfig::reasoning_setting() const {
  if (!reasoning_effort.empty()) return "effort=" + reasoning_effort;
  if (thinking_budget >= 0) return "budget=" + std::to_string(thinking_budget);
  return "none";
}

void ProviderConfig::validate() const {
  if (!reasoning_effort.empty() && thinking_budget >= 0)
    throw std::invalid_argument("provider '" + name +
                                "': reasoning effort and thinking budget are exclusive");
  if (!reasoning_effort.empty() && reasoning_effort != "low" &&
      reasoning_effort != "medium" && reasoning_effort != "high")
    throw std::invalid_argument("provider '" + name + "': bad reasoning effort '" +
                                reasoning_effort + "'");
  if (endpoint.empty() && mock_fixture.empty())
    throw std::invalid_argument("provider '" + name + "': needs an endpoint or a fixture");
}

nlohmann::ordered_json ProviderConfig::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["model"] = model;
  j["endpoint"] = endpoint;
  j["api_key_env"] = api_key_env;
  j["reasoning_effort"] = reasoning_effort;
  j["thinking_budget"] = thinking_budget;
  j["max_output_tokens"] = max_output_tokens;
  j["timeout_s"] = timeout_s;
  j["max_concurrent"] = max_concurrent;
  j["retries"] = retries;
  j["mock_fixture"] = mock_fixture;
  return j;
}

ProviderConfig ProviderConfig::from_json(const nlohmann::ordered_json& j) {
  ProviderConfig cfg;
  cfg.name = j.value("name", "");
  cfg.model = j.value("model", "");
  cfg.endpoint = j.value("endpoint", "");
  cfg.api_key_env = j.value("api_key_env", "");
  cfg.reasoning_effort = j.value("reasoning_effort", "");
  cfg.thinking_budget = j.value("thinking_budget", -1);
  cfg.max_output_tokens = j.value("max_output_tokens", 0);
  cfg.timeout_s = j.value("timeout_s", 600);
  cfg.max_concurrent = j.value("max_concurrent", 4);
  cfg.retries = j.value("retries", 2);
  cfg.mock_fixture = j.value("mock_fixture", "");
  cfg.validate();
  return cfg;
}

// --- mock provider -----------------------------------------------------------

struct MockProvider::Impl {
  std::string model_name = "mock";
  struct Entry {
    std::string output;
    int fail_times = 0;
    long reasoning_tokens = 0;
    long output_tokens = 0;
  };
  std::map<std::string, Entry> responses;
  mutable std::mutex mutex;
  std::map<std::string, int> call_counts;
};

MockProvider::MockProvider(const std::string& fixture_path) : impl_(std::make_unique<Impl>()) {
  nlohmann::json j;
  std::ifstream in(fixture_path);
  if (!in) throw std::runtime_error("cannot open mock fixture: " + fixture_path);
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad mock fixture " + fixture_path + ": " + e.what());
  }
  if (j.value("schema", "") != "chemiq-mock/1")
    throw std::runtime_error("bad mock fixture schema in " + fixture_path);
  impl_->model_name = j.value("model", "mock");
  for (const auto& [id, entry] : j.at("responses").items()) {
    MockProvider::Impl::Entry e;
    e.output = entry.value("output", "");
    e.fail_times = entry.value("fail_times", 0);
    e.reasoning_tokens = entry.value("reasoning_tokens", 0);
    e.output_tokens = entry.value("output_tokens", 0);
    impl_->responses[id] = std::move(e);
  }
}

MockProvider::~MockProvider() = default;

const std::string& MockProvider::model() const { return impl_->model_name; }

int MockProvider::calls(const std::string& question_id) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  const auto it = impl_->call_counts.find(question_id);
  return it == impl_->call_counts.end() ? 0 : it->second;
}

ProviderResponse MockProvider::complete(const QuestionInstance& q) {
  int count = 0;
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    count = ++impl_->call_counts[q.id];
  }
  const auto it = impl_->responses.find(q.id);
  if (it == impl_->responses.end())
    throw ProviderError("no fixture response for " + q.id, /*retryable=*/false);
  if (count <= it->second.fail_times)
    throw ProviderError("mock transient failure for " + q.id, /*retryable=*/true);
  ProviderResponse r;
  r.text = it->second.output;
  r.reasoning_tokens = it->second.reasoning_tokens;
  const long fallback = static_cast<long>(it->second.output.size() / 4 + 1);
  r.output_tokens = it->second.output_tokens > 0 ? it->second.output_tokens : fallback;
  return r;
}

// --- http provider -----------------------------------------------------------

struct HttpChatProvider::Impl {
  ProviderConfig cfg;
  std::string origin;
  std::string path;
  std::string api_key;
};

namespace {

void split_url(const std::string& url, std::string& origin, std::string& path) {
  const size_t scheme = url.find("://");
  const size_t slash =
      (scheme == std::string::npos) ? url.find('/') : url.find('/', scheme + 3);
  if (slash == std::string::npos) {
    origin = url;
    path = "/";
  } else {
    origin = url.substr(0, slash);
    path = url.substr(slash);
  }
}

}  // namespace

HttpChatProvider::HttpChatProvider(const ProviderConfig& cfg) : impl_(std::make_unique<Impl>()) {
  cfg.validate();
  impl_->cfg = cfg;
  split_url(cfg.endpoint, impl_->origin, impl_->path);
  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
      throw std::runtime_error("credential variable " + cfg.api_key_env +
                               " is not set; refusing to start provider '" + cfg.name + "'");
    impl_->api_key = key;
  }
}

HttpChatProvider::~HttpChatProvider() = default;

const std::string& HttpChatProvider::model() const { return impl_->cfg.model; }

std::string HttpChatProvider::reasoning_setting() const {
  return impl_->cfg.reasoning_setting();
}

ProviderResponse HttpChatProvider::complete(const QuestionInstance& q) {
  nlohmann::ordered_json body;
  body["model"] = impl_->cfg.model;
  body["messages"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"role", "user"}, {"content", q.prompt}}});
  if (impl_->cfg.max_output_tokens > 0) body["max_tokens"] = impl_->cfg.max_output_tokens;
  if (!impl_->cfg.reasoning_effort.empty())
    body["reasoning_effort"] = impl_->cfg.reasoning_effort;
  if (impl_->cfg.thinking_budget >= 0) body["thinking_budget"] = impl_->cfg.thinking_budget;

  httplib::Client client(impl_->origin);
  client.set_connection_timeout(impl_->cfg.timeout_s, 0);
  client.set_read_timeout(impl_->cfg.timeout_s, 0);
  httplib::Headers headers;
  if (!impl_->api_key.empty()) headers.emplace("Authorization", "Bearer " + impl_->api_key);

  const httplib::Result res =
      client.Post(impl_->path, headers, body.dump(), "application/json");
  if (!res)
    throw ProviderError("transport failure: " + httplib::to_string(res.error()),
                        /*retryable=*/true);
  if (res->status == 429 || res->status >= 500)
    throw ProviderError("service returned status " + std::to_string(res->status),
                        /*retryable=*/true);
  if (res->status != 200)
    throw ProviderError("service returned status " + std::to_string(res->status) + ": " +
                            res->body,
                        /*retryable=*/false);

  try {
    const auto j = nlohmann::json::parse(res->body);
    ProviderResponse out;
    out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
      const auto& usage = j["usage"];
      out.output_tokens = usage.value("completion_tokens", 0L);
      if (usage.contains("completion_tokens_details"))
        out.reasoning_tokens =
            usage["completion_tokens_details"].value("reasoning_tokens", 0L);
      else
        out.reasoning_tokens = usage.value("reasoning_tokens", 0L);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed service response: ") + e.what(),
                        /*retryable=*/false);
  }
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg) {
  cfg.validate();
  if (!cfg.mock_fixture.empty()) return std::make_unique<MockProvider>(cfg.mock_fixture);
  return std::make_unique<HttpChatProvider>(cfg);
}

}  // namespace chemiq
