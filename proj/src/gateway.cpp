#include "signet/gateway.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "signet/parse.hpp"

namespace signet {

namespace {

constexpr const char* kChatPath = "/v1/chat/completions";
constexpr std::ptrdiff_t kMaxInFlightCeiling = 256;

struct SplitUrl {
    std::string origin;
    std::string path_prefix;
};

SplitUrl split_url(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    const auto path_start =
        base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

}  // namespace

struct ChatClient::Impl {
    EndpointConfig cfg;
    SplitUrl url;
    std::counting_semaphore<kMaxInFlightCeiling> in_flight;

    explicit Impl(EndpointConfig c)
        : cfg(std::move(c)),
          url(split_url(cfg.base_url)),
          in_flight(std::clamp<std::ptrdiff_t>(cfg.max_in_flight, 1, kMaxInFlightCeiling)) {}

    std::string bearer_token() const {
        if (cfg.auth_env.empty()) return "";
        const char* value = std::getenv(cfg.auth_env.c_str());
        return value == nullptr ? "" : value;
    }

    std::string post_once(const std::string& body, const httplib::Headers& headers,
                          std::string& transport_detail) {
        httplib::Client cli(url.origin);
        cli.set_connection_timeout(std::chrono::milliseconds(cfg.timeout_ms));
        cli.set_read_timeout(std::chrono::milliseconds(cfg.timeout_ms));
        cli.set_write_timeout(std::chrono::milliseconds(cfg.timeout_ms));

        httplib::Result res =
            cli.Post(url.path_prefix + kChatPath, headers, body, "application/json");
        if (!res) {
            transport_detail = httplib::to_string(res.error());
            return "";
        }
        if (res->status >= 500) {
            transport_detail = "server error " + std::to_string(res->status);
            return "";
        }
        if (res->status != 200)
            throw ProtocolError("endpoint answered status " + std::to_string(res->status));

        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(std::string("malformed completion body: ") + e.what());
        }
    }
};

ChatClient::ChatClient(EndpointConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

ChatClient::~ChatClient() = default;

const EndpointConfig& ChatClient::config() const { return impl_->cfg; }

std::string ChatClient::chat_complete(const std::string& prompt) {
    nlohmann::json request;
    request["model"] = impl_->cfg.model;
    request["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
    request["temperature"] = impl_->cfg.temperature;
    request["max_tokens"] = impl_->cfg.max_tokens;
    const std::string body = request.dump();

    httplib::Headers headers;
    const std::string token = impl_->bearer_token();
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    impl_->in_flight.acquire();
    struct Release {
        std::counting_semaphore<kMaxInFlightCeiling>& sem;
        ~Release() { sem.release(); }
    } release{impl_->in_flight};

    std::string detail;
    for (int attempt = 0;; ++attempt) {
        std::string transport_detail;
        std::string content = impl_->post_once(body, headers, transport_detail);
        if (transport_detail.empty()) return content;
        detail = transport_detail;
        if (attempt >= impl_->cfg.max_retries) break;
        const auto pause =
            std::chrono::milliseconds(impl_->cfg.backoff_base_ms) * (1LL << attempt);
        std::this_thread::sleep_for(pause);
    }
    throw TransportError("endpoint unreachable after " +
                         std::to_string(impl_->cfg.max_retries + 1) + " attempts: " + detail);
}

AgentDecision LlmAgent::decide(const UpdateContext& ctx, int) {
    const std::string prompt = render_prompt(ctx, dialect_);
    const auto begin = std::chrono::steady_clock::now();
    const std::string raw = client_->chat_complete(prompt);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - begin);
    return {extract_sign(raw, ctx.kind, dialect_), raw, elapsed};
}

std::string LlmAgent::label() const { return "llm:" + client_->config().model; }

}  // namespace signet
