#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>

#include "signet/parse.hpp"

namespace signet {

/// Raised when the transport to a model endpoint fails for good (after the
/// retry budget). Distinct from a refusal, which is an answer.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AgentDecision {
    ParsedAnswer parsed;
    std::string justification;
    std::chrono::milliseconds latency{0};
};

/// A decision source. Implementations must be safe for concurrent decide
/// calls and must not mutate simulation state.
class AgentBackend {
  public:
    virtual ~AgentBackend() = default;
    /// The iteration number keys scripted replays; live back-ends ignore it.
    virtual AgentDecision decide(const UpdateContext& ctx, int iteration) = 0;
    virtual std::string label() const = 0;
};

/// Always answers the configured sign. Smoke-test fodder.
class ConstantAgent final : public AgentBackend {
  public:
    explicit ConstantAgent(Sign sign) : sign_(sign) {}
    AgentDecision decide(const UpdateContext&, int) override;
    std::string label() const override;

  private:
    Sign sign_;
};

/// Repeats the reference sign it is shown, leaving homophily-driven state
/// untouched. Used to pin stability metrics.
class EchoAgent final : public AgentBackend {
  public:
    AgentDecision decide(const UpdateContext& ctx, int) override;
    std::string label() const override { return "echo"; }
};

/// Deterministic oracle: answers the sign of the summed products of the two
/// links through each peer, falling back to the shown reference on a tie.
/// Neutral links contribute zero to the sum.
class RuleAgent final : public AgentBackend {
  public:
    AgentDecision decide(const UpdateContext& ctx, int) override;
    std::string label() const override { return "rule"; }
};

/// Replays recorded raw responses keyed by (iteration, focal, target); the
/// text runs through the real parser, so replay exercises the same path as a
/// live run.
class ScriptedAgent final : public AgentBackend {
  public:
    using Key = std::tuple<int, int, int>;

    ScriptedAgent(std::map<Key, std::string> lines, PromptDialect dialect)
        : lines_(std::move(lines)), dialect_(dialect) {}

    AgentDecision decide(const UpdateContext& ctx, int iteration) override;
    std::string label() const override { return "scripted"; }

  private:
    std::map<Key, std::string> lines_;
    PromptDialect dialect_;
};

}  // namespace signet
