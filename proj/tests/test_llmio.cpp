#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "chemiq/grade.hpp"
#include "chemiq/llmio.hpp"

using namespace chemiq;

namespace {

QuestionInstance make_question(const std::string& id, const std::string& category,
                               AnswerSpec answer) {
    QuestionInstance q;
    q.id = id;
    q.category = category;
    q.prompt = "prompt for " + id;
    q.answer = std::move(answer);
    return q;
}

std::vector<QuestionInstance> tiny_suite() {
    return {
        make_question("counting_carbon-001", "counting_carbon", AnswerSpec::exact_integer(4)),
        make_question("counting_carbon-002", "counting_carbon", AnswerSpec::exact_integer(7)),
        make_question("counting_ring-001", "counting_ring", AnswerSpec::exact_integer(2)),
    };
}

std::string write_fixture(const std::string& path, const nlohmann::ordered_json& responses) {
    nlohmann::ordered_json j;
    j["schema"] = "chemiq-mock/1";
    j["model"] = "mock";
    j["responses"] = responses;
    write_text_file(path, j.dump(2) + "\n");
    return path;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("provider config validates reasoning controls") {
    ProviderConfig cfg;
    cfg.name = "x";
    cfg.endpoint = "http://localhost/v1/chat";
    cfg.reasoning_effort = "high";
    CHECK(cfg.reasoning_setting() == "effort=high");
    CHECK_NOTHROW(cfg.validate());

    cfg.thinking_budget = 1024;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg.reasoning_effort.clear();
    CHECK(cfg.reasoning_setting() == "budget=1024");
    CHECK_NOTHROW(cfg.validate());

    cfg.endpoint.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg.endpoint = "http://localhost/v1/chat";
    cfg.reasoning_effort = "extreme";
    cfg.thinking_budget = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    ProviderConfig round;
    round.name = "m";
    round.mock_fixture = "fixture.json";
    round.retries = 1;
    const auto back = ProviderConfig::from_json(round.to_json());
    CHECK(back.name == "m");
    CHECK(back.mock_fixture == "fixture.json");
    CHECK(back.retries == 1);
}

TEST_CASE("mock provider echoes fixture answers through the whole loop") {
    const auto questions = tiny_suite();
    TempFile fixture("llmio_fixture.json");
    TempFile log("llmio_transcripts.jsonl");
    write_fixture(fixture.path, {{"counting_carbon-001", {{"output", "The answer is 4"}}},
                                 {"counting_carbon-002", {{"output", "7"}}},
                                 {"counting_ring-001", {{"output", "I count 2 rings"}}}});

    MockProvider provider(fixture.path);
    RunOptions opts;
    opts.transcripts_path = log.path;
    opts.max_concurrent = 1;
    const auto transcripts = run_batch(questions, provider, opts);
    REQUIRE(transcripts.size() == 3);
    for (const auto& t : transcripts) {
        CHECK(t.error.empty());
        CHECK(t.attempts == 1);
        CHECK(t.wall_ms == 0);  // deterministic provider
    }

    std::map<std::string, std::string> responses;
    for (const auto& t : transcripts) responses[t.question_id] = t.output;
    const auto grades = grade_batch(questions, responses, nullptr);
    for (const auto& g : grades) CHECK(g.verdict == Verdict::Correct);
}

TEST_CASE("transient failures are retried, terminal ones recorded") {
    const auto questions = tiny_suite();
    TempFile fixture("llmio_retry_fixture.json");
    TempFile log("llmio_retry_transcripts.jsonl");
    write_fixture(fixture.path,
                  {{"counting_carbon-001", {{"output", "4"}, {"fail_times", 2}}},
                   {"counting_carbon-002", {{"output", "7"}, {"fail_times", 5}}},
                   {"counting_ring-001", {{"output", "2"}}}});

    MockProvider provider(fixture.path);
    RunOptions opts;
    opts.transcripts_path = log.path;
    opts.max_concurrent = 1;
    opts.retries = 2;
    const auto transcripts = run_batch(questions, provider, opts);

    CHECK(transcripts[0].attempts == 3);  // failed twice, then answered
    CHECK(transcripts[0].error.empty());
    CHECK(transcripts[0].output == "4");

    CHECK(transcripts[1].attempts == 3);  // 1 + 2 retries, still failing
    CHECK(!transcripts[1].error.empty());
    CHECK(transcripts[1].output.empty());

    CHECK(transcripts[2].attempts == 1);
}

TEST_CASE("interrupted runs resume without re-asking finished questions") {
    const auto questions = tiny_suite();
    TempFile fixture("llmio_resume_fixture.json");
    TempFile log("llmio_resume_transcripts.jsonl");
    write_fixture(fixture.path, {{"counting_carbon-001", {{"output", "4"}}},
                                 {"counting_carbon-002", {{"output", "7"}}},
                                 {"counting_ring-001", {{"output", "2"}}}});

    // a finished record plus a torn final line, as if the process died mid-write
    Transcript done;
    done.question_id = "counting_carbon-001";
    done.model = "mock";
    done.reasoning = "none";
    done.output = "4";
    done.attempts = 1;
    write_text_file(log.path, done.to_json().dump() + "\n" + R"({"schema": "chemiq-tran)");

    CHECK(load_transcripts(log.path).size() == 1);

    MockProvider provider(fixture.path);
    RunOptions opts;
    opts.transcripts_path = log.path;
    opts.max_concurrent = 1;
    const auto transcripts = run_batch(questions, provider, opts);
    REQUIRE(transcripts.size() == 3);
    CHECK(provider.calls("counting_carbon-001") == 0);  // already answered
    CHECK(provider.calls("counting_carbon-002") == 1);
    CHECK(provider.calls("counting_ring-001") == 1);

    // the log now holds each id exactly once
    const auto reloaded = load_transcripts(log.path);
    std::set<std::string> ids;
    for (const auto& t : reloaded) CHECK(ids.insert(t.question_id).second);
    CHECK(ids.size() == 3);
}

TEST_CASE("concurrent batches answer every question exactly once") {
    std::vector<QuestionInstance> questions;
    nlohmann::ordered_json responses;
    for (int i = 1; i <= 24; ++i) {
        char id[40];
        std::snprintf(id, sizeof(id), "counting_carbon-%03d", i);
        questions.push_back(make_question(id, "counting_carbon", AnswerSpec::exact_integer(i)));
        responses[id] = {{"output", std::to_string(i)}};
    }
    TempFile fixture("llmio_parallel_fixture.json");
    TempFile log("llmio_parallel_transcripts.jsonl");
    write_fixture(fixture.path, responses);

    MockProvider provider(fixture.path);
    RunOptions opts;
    opts.transcripts_path = log.path;
    opts.max_concurrent = 8;
    const auto transcripts = run_batch(questions, provider, opts);
    REQUIRE(transcripts.size() == 24);
    for (size_t i = 0; i < transcripts.size(); ++i) {
        CHECK(transcripts[i].question_id == questions[i].id);  // aligned to input order
        CHECK(transcripts[i].output == std::to_string(i + 1));
    }
    CHECK(load_transcripts(log.path).size() == 24);
}

TEST_CASE("token summaries average per category and variant") {
    auto questions = tiny_suite();
    questions[1].variant = "";

    std::vector<Transcript> transcripts(3);
    transcripts[0].question_id = "counting_carbon-001";
    transcripts[0].output = "4";
    transcripts[0].output_tokens = 100;
    transcripts[0].reasoning_tokens = 10;
    transcripts[1].question_id = "counting_carbon-002";
    transcripts[1].output = "7";
    transcripts[1].output_tokens = 200;
    transcripts[1].reasoning_tokens = 30;
    transcripts[2].question_id = "counting_ring-001";
    transcripts[2].error = "gave up";  // excluded from means

    const auto summary = summarize_tokens(questions, transcripts);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].category == "counting_carbon");
    CHECK(summary[0].n == 2);
    CHECK(summary[0].mean_output_tokens == doctest::Approx(150.0));
    CHECK(summary[0].mean_reasoning_tokens == doctest::Approx(20.0));
}

TEST_CASE("http provider speaks the chat-completions shape") {
    httplib::Server server;
    std::atomic<int> hits{0};
    std::atomic<int> failures_left{1};
    server.Post("/v1/chat/completions",
                [&](const httplib::Request& req, httplib::Response& res) {
                    ++hits;
                    if (req.get_header_value("Authorization") != "Bearer sk-test-123") {
                        res.status = 401;
                        return;
                    }
                    if (failures_left.fetch_sub(1) > 0) {
                        res.status = 500;
                        return;
                    }
                    const auto body = nlohmann::json::parse(req.body);
                    CHECK(body.at("model") == "test-model");
                    CHECK(body.at("reasoning_effort") == "low");
                    const std::string prompt =
                        body.at("messages").at(0).at("content").get<std::string>();
                    nlohmann::json out = {
                        {"choices",
                         {{{"message", {{"role", "assistant"}, {"content", "echo: " + prompt}}}}}},
                        {"usage",
                         {{"completion_tokens", 42},
                          {"completion_tokens_details", {{"reasoning_tokens", 17}}}}}};
                    res.set_content(out.dump(), "application/json");
                });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(5));

    ProviderConfig cfg;
    cfg.name = "test";
    cfg.model = "test-model";
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    cfg.api_key_env = "CHEMIQ_TEST_KEY";
    cfg.reasoning_effort = "low";
    cfg.timeout_s = 5;

    // credentials are checked before any request goes out
    unsetenv("CHEMIQ_TEST_KEY");
    CHECK_THROWS_AS(make_provider(cfg), std::runtime_error);
    CHECK(hits.load() == 0);

    setenv("CHEMIQ_TEST_KEY", "sk-test-123", 1);
    const auto provider = make_provider(cfg);

    const auto q = make_question("counting_carbon-001", "counting_carbon",
                                 AnswerSpec::exact_integer(4));
    // one 500, then success: run_batch retries it away
    TempFile log("llmio_http_transcripts.jsonl");
    RunOptions opts;
    opts.transcripts_path = log.path;
    opts.max_concurrent = 1;
    const auto transcripts = run_batch({q}, *provider, opts);
    REQUIRE(transcripts.size() == 1);
    CHECK(transcripts[0].attempts == 2);
    CHECK(transcripts[0].output == "echo: prompt for counting_carbon-001");
    CHECK(transcripts[0].output_tokens == 42);
    CHECK(transcripts[0].reasoning_tokens == 17);
    CHECK(transcripts[0].reasoning == "effort=low");

    server.stop();
    thread.join();
    unsetenv("CHEMIQ_TEST_KEY");
}

TEST_CASE("transcript jsonl round-trips") {
    Transcript t;
    t.question_id = "reaction-synthetic-random-019";
    t.model = "mock";
    t.reasoning = "budget=1024";
    t.output = "line one\nline two";
    t.reasoning_tokens = 5;
    t.output_tokens = 9;
    t.attempts = 2;
    t.wall_ms = 0;

    const auto back = transcripts_from_jsonl(transcripts_to_jsonl({t}));
    REQUIRE(back.size() == 1);
    CHECK(back[0].question_id == t.question_id);
    CHECK(back[0].output == t.output);
    CHECK(back[0].attempts == 2);
    CHECK(back[0].reasoning == "budget=1024");

    CHECK_THROWS_AS(transcripts_from_jsonl("{\"schema\":\"other/1\"}\n"), std::runtime_error);
    CHECK_THROWS_AS(transcripts_from_jsonl("not json\n"), std::runtime_error);
}
