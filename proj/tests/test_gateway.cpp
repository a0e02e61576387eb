#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "signet/dynamics.hpp"
#include "signet/gateway.hpp"

using namespace signet;
using nlohmann::json;

namespace {

std::string completion_body(const std::string& content) {
    json reply;
    reply["choices"] = json::array({{{"message", {{"role", "assistant"}, {"content", content}}}}});
    return reply.dump();
}

/// In-process chat endpoint with a scriptable handler.
class MockEndpoint {
  public:
    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

    explicit MockEndpoint(Handler handler) {
        server_.Post("/v1/chat/completions",
                     [handler = std::move(handler)](const httplib::Request& req,
                                                    httplib::Response& res) { handler(req, res); });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockEndpoint() {
        server_.stop();
        thread_.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

EndpointConfig quick_config(const std::string& url) {
    EndpointConfig cfg;
    cfg.base_url = url;
    cfg.model = "test-model";
    cfg.max_retries = 2;
    cfg.backoff_base_ms = 1;
    cfg.timeout_ms = 2000;
    return cfg;
}

}  // namespace

TEST_CASE("the request carries model, single user message, temperature, max tokens") {
    json seen;
    MockEndpoint endpoint([&](const httplib::Request& req, httplib::Response& res) {
        seen = json::parse(req.body);
        res.set_content(completion_body("Positive. All good."), "application/json");
    });
    EndpointConfig cfg = quick_config(endpoint.url());
    cfg.temperature = 0.0;
    cfg.max_tokens = 256;
    ChatClient client(cfg);

    CHECK(client.chat_complete("hello there") == "Positive. All good.");
    CHECK(seen.at("model") == "test-model");
    CHECK(seen.at("temperature").get<double>() == doctest::Approx(0.0));
    CHECK(seen.at("max_tokens") == 256);
    REQUIRE(seen.at("messages").size() == 1);
    CHECK(seen.at("messages").at(0).at("role") == "user");
    CHECK(seen.at("messages").at(0).at("content") == "hello there");
}

TEST_CASE("a nonzero configured temperature reaches the wire unchanged") {
    json seen;
    MockEndpoint endpoint([&](const httplib::Request& req, httplib::Response& res) {
        seen = json::parse(req.body);
        res.set_content(completion_body("ok"), "application/json");
    });
    EndpointConfig cfg = quick_config(endpoint.url());
    cfg.temperature = 0.7;
    ChatClient client(cfg);
    client.chat_complete("x");
    CHECK(seen.at("temperature").get<double>() == doctest::Approx(0.7));
}

TEST_CASE("fixture text comes back byte-for-byte") {
    const std::string fixture = "**neutral or slightly negative**\n\nBecause of détente.";
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        res.set_content(completion_body(fixture), "application/json");
    });
    ChatClient client(quick_config(endpoint.url()));
    CHECK(client.chat_complete("p") == fixture);
}

TEST_CASE("two server errors are retried, the third answer succeeds") {
    std::atomic<int> calls{0};
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        if (++calls <= 2) {
            res.status = 500;
            res.set_content("overloaded", "text/plain");
            return;
        }
        res.set_content(completion_body("recovered"), "application/json");
    });
    ChatClient client(quick_config(endpoint.url()));
    CHECK(client.chat_complete("p") == "recovered");
    CHECK(calls == 3);
}

TEST_CASE("persistent server errors exhaust the retry budget") {
    std::atomic<int> calls{0};
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.status = 503;
    });
    ChatClient client(quick_config(endpoint.url()));
    CHECK_THROWS_AS(client.chat_complete("p"), TransportError);
    CHECK(calls == 3);  // first attempt plus two retries
}

TEST_CASE("client errors are protocol errors and are never retried") {
    std::atomic<int> calls{0};
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.status = 404;
    });
    ChatClient client(quick_config(endpoint.url()));
    CHECK_THROWS_AS(client.chat_complete("p"), ProtocolError);
    CHECK(calls == 1);
}

TEST_CASE("a 200 with a malformed body is a protocol error, not a retry") {
    std::atomic<int> calls{0};
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.set_content("{\"unexpected\":true}", "application/json");
    });
    ChatClient client(quick_config(endpoint.url()));
    CHECK_THROWS_AS(client.chat_complete("p"), ProtocolError);
    CHECK(calls == 1);
}

TEST_CASE("an unreachable endpoint raises a transport error") {
    EndpointConfig cfg = quick_config("http://127.0.0.1:1");
    cfg.max_retries = 0;
    cfg.timeout_ms = 300;
    ChatClient client(cfg);
    CHECK_THROWS_AS(client.chat_complete("p"), TransportError);
}

TEST_CASE("the bearer token is read from the named environment variable") {
    std::string auth_seen = "unset";
    MockEndpoint endpoint([&](const httplib::Request& req, httplib::Response& res) {
        auth_seen = req.has_header("Authorization") ? req.get_header_value("Authorization") : "";
        res.set_content(completion_body("ok"), "application/json");
    });

    ::setenv("SIGNET_TEST_TOKEN", "sekrit", 1);
    EndpointConfig cfg = quick_config(endpoint.url());
    cfg.auth_env = "SIGNET_TEST_TOKEN";
    ChatClient with_token(cfg);
    with_token.chat_complete("p");
    CHECK(auth_seen == "Bearer sekrit");

    ::unsetenv("SIGNET_TEST_TOKEN");
    ChatClient without_token(cfg);
    without_token.chat_complete("p");
    CHECK(auth_seen == "");

    EndpointConfig no_env = quick_config(endpoint.url());
    ChatClient unconfigured(no_env);
    unconfigured.chat_complete("p");
    CHECK(auth_seen == "");
}

TEST_CASE("a path prefix in the base url is honored") {
    std::string path_seen;
    httplib::Server server;
    server.Post("/proxy/v1/chat/completions",
                [&](const httplib::Request& req, httplib::Response& res) {
                    path_seen = req.path;
                    res.set_content(completion_body("ok"), "application/json");
                });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    ChatClient client(quick_config("http://127.0.0.1:" + std::to_string(port) + "/proxy/"));
    CHECK(client.chat_complete("p") == "ok");
    CHECK(path_seen == "/proxy/v1/chat/completions");

    server.stop();
    t.join();
}

TEST_CASE("concurrent requests never exceed the in-flight cap") {
    std::atomic<int> in_flight{0};
    std::atomic<int> peak{0};
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        int now = ++in_flight;
        int seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        --in_flight;
        res.set_content(completion_body("ok"), "application/json");
    });

    EndpointConfig cfg = quick_config(endpoint.url());
    cfg.max_in_flight = 2;
    ChatClient client(cfg);

    std::vector<std::thread> workers;
    for (int i = 0; i < 12; ++i)
        workers.emplace_back([&] { client.chat_complete("p"); });
    for (auto& w : workers) w.join();
    CHECK(peak.load() <= 2);
    CHECK(peak.load() >= 1);
}

TEST_CASE("the llm back-end renders the context, parses the reply, and times it") {
    std::string prompt_seen;
    MockEndpoint endpoint([&](const httplib::Request& req, httplib::Response& res) {
        prompt_seen = json::parse(req.body).at("messages").at(0).at("content");
        res.set_content(completion_body("Negative. Cognitive dissonance would result."),
                        "application/json");
    });
    auto client = std::make_shared<ChatClient>(quick_config(endpoint.url()));
    LlmAgent agent(client, PromptDialect::LlamaStyle);
    CHECK(agent.label() == "llm:test-model");

    InteractionMatrix M = InteractionMatrix::parse(3, "++---+");
    UpdateContext ctx =
        build_context(M, 0, 1, InteractionKind::Appraisal, UpdateMechanism::Homophily);
    AgentDecision decision = agent.decide(ctx, 1);

    CHECK(prompt_seen == render_prompt(ctx, PromptDialect::LlamaStyle));
    CHECK(decision.parsed == ParsedAnswer::Negative);
    CHECK(decision.justification == "Negative. Cognitive dissonance would result.");
    CHECK(decision.latency.count() >= 0);
}

TEST_CASE("endpoint failure inside a simulation aborts it cleanly") {
    MockEndpoint endpoint([&](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
    });
    EndpointConfig cfg = quick_config(endpoint.url());
    cfg.max_retries = 0;
    auto client = std::make_shared<ChatClient>(cfg);
    LlmAgent agent(client, PromptDialect::LlamaStyle);

    ExperimentConfig run_cfg;
    run_cfg.t_max = 3;
    Trajectory traj =
        run_simulation(run_cfg, InteractionMatrix::parse(3, "++++++"), agent);
    CHECK(traj.aborted);
    CHECK(traj.matrices.size() == 1);
}
