#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "chemiq/llmio.hpp"

namespace chemiq {

// --- transcript serialization ------------------------------------------------

nlohmann::ordered_json Transcript::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "chemiq-transcript/1";
  j["id"] = question_id;
  j["model"] = model;
  j["reasoning"] = reasoning;
  j["output"] = output;
  j["reasoning_tokens"] = reasoning_tokens;
  j["output_tokens"] = output_tokens;
  j["attempts"] = attempts;
  j["error"] = error;
  j["wall_ms"] = wall_ms;
  return j;
}

Transcript Transcript::from_json(const nlohmann::ordered_json& j) {
  if (j.value("schema", "") != "chemiq-transcript/1")
    throw std::runtime_error("unsupported transcript schema: " + j.value("schema", "<missing>"));
  Transcript t;
  t.question_id = j.at("id").get<std::string>();
  t.model = j.value("model", "");
  t.reasoning = j.value("reasoning", "none");
  t.output = j.value("output", "");
  t.reasoning_tokens = j.value("reasoning_tokens", 0L);
  t.output_tokens = j.value("output_tokens", 0L);
  t.attempts = j.value("attempts", 0);
  t.error = j.value("error", "");
  t.wall_ms = j.value("wall_ms", 0L);
  return t;
}

std::string transcripts_to_jsonl(const std::vector<Transcript>& transcripts) {
  std::string out;
  for (const auto& t : transcripts) out += t.to_json().dump() + "\n";
  return out;
}

std::vector<Transcript> transcripts_from_jsonl(const std::string& text) {
  std::vector<Transcript> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(Transcript::from_json(nlohmann::ordered_json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("transcript line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Transcript> load_transcripts(const std::string& path) {
  if (!std::filesystem::exists(path)) return {};
  std::string text = read_text_file(path);
  // no trailing newline: the final record was torn mid-write, drop it
  if (!text.empty() && text.back() != '\n') {
    const size_t cut = text.rfind('\n');
    text = (cut == std::string::npos) ? std::string() : text.substr(0, cut + 1);
  }
  return transcripts_from_jsonl(text);
}

// --- batch execution ---------------------------------------------------------

std::vector<Transcript> run_batch(const std::vector<QuestionInstance>& questions,
                                  Provider& provider, const RunOptions& opts) {
  std::map<std::string, Transcript> done;
  for (auto& t : load_transcripts(opts.transcripts_path)) done[t.question_id] = std::move(t);

  std::vector<const QuestionInstance*> pending;
  for (const auto& q : questions)
    if (!done.count(q.id)) pending.push_back(&q);

  // drop a torn final line from the file itself, otherwise the next append
  // would glue a fresh record onto the fragment
  if (!opts.transcripts_path.empty() && std::filesystem::exists(opts.transcripts_path)) {
    std::string text = read_text_file(opts.transcripts_path);
    if (!text.empty() && text.back() != '\n') {
      const size_t cut = text.rfind('\n');
      write_text_file(opts.transcripts_path,
                      cut == std::string::npos ? std::string() : text.substr(0, cut + 1));
    }
  }

  std::ofstream log;
  if (!opts.transcripts_path.empty()) {
    log.open(opts.transcripts_path, std::ios::app | std::ios::binary);
    if (!log) throw std::runtime_error("cannot append to " + opts.transcripts_path);
  }

  std::mutex sink_mutex;
  auto record = [&](Transcript t) {
    std::lock_guard<std::mutex> lock(sink_mutex);
    if (log.is_open()) {
      log << t.to_json().dump() << "\n";
      log.flush();
    }
    done[t.question_id] = std::move(t);
  };

  const int retries = opts.retries;
  auto ask = [&](const QuestionInstance& q) {
    Transcript t;
    t.question_id = q.id;
    t.model = provider.model();
    t.reasoning = provider.reasoning_setting();
    const auto start = std::chrono::steady_clock::now();
    for (int attempt = 1; attempt <= 1 + retries; ++attempt) {
      t.attempts = attempt;
      try {
        const ProviderResponse r = provider.complete(q);
        t.output = r.text;
        t.reasoning_tokens = r.reasoning_tokens;
        t.output_tokens = r.output_tokens;
        t.error.clear();
        break;
      } catch (const ProviderError& e) {
        t.error = e.what();
        if (!e.retryable) break;
      }
    }
    if (!provider.deterministic()) {
      t.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    }
    record(std::move(t));
  };

  const int workers =
      std::max(1, std::min<int>(opts.max_concurrent, static_cast<int>(pending.size())));
  if (workers <= 1) {
    for (const auto* q : pending) ask(*q);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < pending.size(); i = next.fetch_add(1))
          ask(*pending[i]);
      });
    }
    for (auto& th : threads) th.join();
  }

  std::vector<Transcript> out;
  out.reserve(questions.size());
  for (const auto& q : questions) out.push_back(done.at(q.id));
  return out;
}

// --- token accounting --------------------------------------------------------

std::vector<TokenSummary> summarize_tokens(const std::vector<QuestionInstance>& questions,
                                           const std::vector<Transcript>& transcripts) {
  std::map<std::string, std::pair<std::string, std::string>> kind_of;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& q : questions) {
    if (!kind_of.count(q.id)) {
      kind_of[q.id] = {q.category, q.variant};
      if (std::find(order.begin(), order.end(), std::make_pair(q.category, q.variant)) ==
          order.end())
        order.emplace_back(q.category, q.variant);
    }
  }

  std::map<std::pair<std::string, std::string>, TokenSummary> acc;
  for (const auto& t : transcripts) {
    const auto it = kind_of.find(t.question_id);
    if (it == kind_of.end() || !t.error.empty()) continue;
    TokenSummary& s = acc[it->second];
    s.category = it->second.first;
    s.variant = it->second.second;
    s.n += 1;
    s.mean_output_tokens += static_cast<double>(t.output_tokens);
    s.mean_reasoning_tokens += static_cast<double>(t.reasoning_tokens);
  }

  std::vector<TokenSummary> out;
  for (const auto& key : order) {
    const auto it = acc.find(key);
    if (it == acc.end()) continue;
    TokenSummary s = it->second;
    s.mean_output_tokens /= s.n;
    s.mean_reasoning_tokens /= s.n;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace chemiq
