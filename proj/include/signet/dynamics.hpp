#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "signet/agents.hpp"
#include "signet/balance.hpp"

namespace signet {

/// How a run seeds its starting matrices: every one of the 64 three-agent
/// sign assignments, or independent fair coin flips per entry.
enum class InitMode { ExhaustiveTriad, RademacherRandom };

const char* init_mode_word(InitMode mode);
InitMode init_mode_from_word(const std::string& w);

/// One full sweep cell: population size, horizon, setting, agent selection.
struct ExperimentConfig {
    int m = 3;
    /// Simulations per initialization under ExhaustiveTriad, total
    /// simulations under RademacherRandom.
    int n = 10;
    int t_max = 10;
    InteractionKind kind = InteractionKind::Relationship;
    UpdateMechanism mechanism = UpdateMechanism::Homophily;
    InitMode init_mode = InitMode::ExhaustiveTriad;
    std::uint64_t seed = 0;
    std::string backend = "rule";
    std::string model_label;
    PromptDialect dialect = PromptDialect::LlamaStyle;

    int simulation_count() const {
        return init_mode == InitMode::ExhaustiveTriad ? 64 * n : n;
    }
    void validate() const;
};

struct StepDecision {
    int t;
    int focal;
    int target;
    AgentDecision decision;
    /// Sign written into the next matrix (the prior sign when refused).
    Sign applied;
    bool refused;
};

struct StepResult {
    InteractionMatrix next;
    std::vector<StepDecision> decisions;
    int refusals = 0;
};

/// One simulation's full history: matrices for t = 0..t_max plus every
/// decision taken. `valid` drops to false on any refusal; `aborted` marks a
/// transport death, which also truncates the history.
struct Trajectory {
    InteractionKind kind;
    UpdateMechanism mechanism;
    std::vector<InteractionMatrix> matrices;
    std::vector<StepDecision> decisions;
    bool valid = true;
    bool aborted = false;
    int refusal_count = 0;

    const InteractionMatrix& final_state() const { return matrices.back(); }
};

/// Maps a declared answer onto the stored sign. Hedged answers round to
/// their leaning. Refusal has no sign and throws.
Sign coerce_reported_sign(ParsedAnswer parsed);

/// Updates every ordered pair from a snapshot of M. Decisions are requested
/// in (focal, target) lexicographic order and the new matrix is assembled
/// only afterwards, so no decision can observe another from the same step.
StepResult synchronous_step(const InteractionMatrix& M, AgentBackend& agent,
                            InteractionKind kind, UpdateMechanism mechanism, int t);

/// Runs t_max synchronous steps from init. Refusals keep the prior sign and
/// invalidate the simulation; a TransportError stops it early and marks it
/// aborted instead of propagating.
Trajectory run_simulation(const ExperimentConfig& cfg, const InteractionMatrix& init,
                          AgentBackend& agent);

/// Each entry is an independent fair draw from {-1, +1}, one generator word
/// per entry, so a fixed seed gives the same matrix on every platform.
InteractionMatrix random_initialization(int m, std::mt19937_64& rng);

}  // namespace signet
