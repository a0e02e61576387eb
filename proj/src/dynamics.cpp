#include "signet/dynamics.hpp"

namespace signet {

const char* init_mode_word(InitMode mode) {
    return mode == InitMode::ExhaustiveTriad ? "exhaustive" : "random";
}

InitMode init_mode_from_word(const std::string& w) {
    if (w == "exhaustive") return InitMode::ExhaustiveTriad;
    if (w == "random") return InitMode::RademacherRandom;
    throw std::invalid_argument("unknown initialization mode: " + w);
}

void ExperimentConfig::validate() const {
    if (m < 3) throw std::invalid_argument("population size must be at least 3");
    if (n < 1) throw std::invalid_argument("simulation count must be positive");
    if (t_max < 0) throw std::invalid_argument("iteration horizon must not be negative");
    if (init_mode == InitMode::ExhaustiveTriad && m != 3)
        throw std::invalid_argument("exhaustive initialization is defined only for three agents");
}

Sign coerce_reported_sign(ParsedAnswer parsed) {
    switch (parsed) {
        case ParsedAnswer::Positive:
        case ParsedAnswer::NeutralOrPositive: return Sign::Positive;
        case ParsedAnswer::Negative:
        case ParsedAnswer::NeutralOrNegative: return Sign::Negative;
        case ParsedAnswer::Neutral: return Sign::Neutral;
        case ParsedAnswer::Refusal: break;
    }
    throw std::invalid_argument("a refusal carries no sign");
}

StepResult synchronous_step(const InteractionMatrix& M, AgentBackend& agent,
                            InteractionKind kind, UpdateMechanism mechanism, int t) {
    std::vector<Sign> next;
    next.reserve(M.entry_count());
    std::vector<StepDecision> decisions;
    decisions.reserve(M.entry_count());
    int refusals = 0;

    for (int i = 0; i < M.m(); ++i)
        for (int j = 0; j < M.m(); ++j) {
            if (i == j) continue;
            AgentDecision d = agent.decide(build_context(M, i, j, kind, mechanism), t);
            const bool refused = d.parsed == ParsedAnswer::Refusal;
            const Sign applied = refused ? M.at(i, j) : coerce_reported_sign(d.parsed);
            if (refused) ++refusals;
            next.push_back(applied);
            decisions.push_back({t, i, j, std::move(d), applied, refused});
        }

    return {InteractionMatrix(M.m(), std::move(next)), std::move(decisions), refusals};
}

Trajectory run_simulation(const ExperimentConfig& cfg, const InteractionMatrix& init,
                          AgentBackend& agent) {
    if (init.contains_neutral())
        throw std::invalid_argument("initial matrices must be free of neutral entries");
    if (init.m() != cfg.m) throw std::invalid_argument("initialization size mismatch");

    Trajectory traj{cfg.kind, cfg.mechanism, {init}, {}, true, false, 0};
    for (int t = 1; t <= cfg.t_max; ++t) {
        try {
            StepResult step = synchronous_step(traj.matrices.back(), agent, cfg.kind,
                                               cfg.mechanism, t);
            traj.matrices.push_back(std::move(step.next));
            traj.decisions.insert(traj.decisions.end(),
                                  std::make_move_iterator(step.decisions.begin()),
                                  std::make_move_iterator(step.decisions.end()));
            traj.refusal_count += step.refusals;
            if (step.refusals > 0) traj.valid = false;
        } catch (const TransportError&) {
            traj.aborted = true;
            traj.valid = false;
            break;
        }
    }
    return traj;
}

InteractionMatrix random_initialization(int m, std::mt19937_64& rng) {
    return InteractionMatrix::build(m, [&rng](int, int) {
        return (rng() >> 63) ? Sign::Positive : Sign::Negative;
    });
}

}  // namespace signet
