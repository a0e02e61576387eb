#pragma once

#include <memory>
#include <string>

#include "signet/agents.hpp"
#include "signet/prompt.hpp"

namespace signet {

/// The endpoint answered, but not in the shape the wire protocol promises:
/// a non-success status or a body without the expected fields. Never
/// retried. Derives from TransportError so a simulation treats both kinds
/// of endpoint failure the same way.
class ProtocolError : public TransportError {
  public:
    using TransportError::TransportError;
};

struct EndpointConfig {
    /// Server root, e.g. "http://127.0.0.1:8000"; the chat-completions path
    /// is appended. A path prefix after the host is honored.
    std::string base_url = "http://127.0.0.1:8000";
    std::string model;
    double temperature = 0.0;
    int max_tokens = 512;
    int timeout_ms = 120000;
    /// Additional attempts after the first; only transport failures and 5xx
    /// answers consume them.
    int max_retries = 3;
    int backoff_base_ms = 250;
    /// Name of the environment variable holding the bearer token. Empty, or
    /// an unset variable, sends no Authorization header.
    std::string auth_env;
    int max_in_flight = 8;
};

/// Chat-completions client. Safe for concurrent use; an in-flight cap
/// bounds simultaneous requests.
class ChatClient {
  public:
    explicit ChatClient(EndpointConfig cfg);
    ~ChatClient();
    ChatClient(const ChatClient&) = delete;
    ChatClient& operator=(const ChatClient&) = delete;

    /// Sends the prompt as a single user message and returns the assistant
    /// text verbatim. Throws TransportError when the endpoint stays
    /// unreachable through the retry budget, ProtocolError on a malformed
    /// answer.
    std::string chat_complete(const std::string& prompt);

    const EndpointConfig& config() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Back-end that renders each context, queries the endpoint, and parses the
/// reply. Latency covers the full exchange including retries.
class LlmAgent final : public AgentBackend {
  public:
    LlmAgent(std::shared_ptr<ChatClient> client, PromptDialect dialect)
        : client_(std::move(client)), dialect_(dialect) {}

    AgentDecision decide(const UpdateContext& ctx, int iteration) override;
    std::string label() const override;

  private:
    std::shared_ptr<ChatClient> client_;
    PromptDialect dialect_;
};

}  // namespace signet
