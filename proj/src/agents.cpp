#include "signet/agents.hpp"

#include <cctype>

namespace signet {

namespace {

ParsedAnswer answer_for_sign(Sign s) {
    switch (s) {
        case Sign::Positive: return ParsedAnswer::Positive;
        case Sign::Negative: return ParsedAnswer::Negative;
        case Sign::Neutral: return ParsedAnswer::Neutral;
    }
    throw std::invalid_argument("unknown sign");
}

// "Positive", "negative", ... with a leading capital. Deterministic agents
// open their justification with this word so the text re-parses to the same
// answer when a log is replayed through the parser.
std::string leading_word(Sign s) {
    std::string w = sign_word(s);
    w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
}

}  // namespace

AgentDecision ConstantAgent::decide(const UpdateContext&, int) {
    return {answer_for_sign(sign_), leading_word(sign_) + ". Fixed answer.", {}};
}

std::string ConstantAgent::label() const {
    return std::string("constant:") + sign_char(sign_);
}

AgentDecision EchoAgent::decide(const UpdateContext& ctx, int) {
    return {answer_for_sign(ctx.reference),
            leading_word(ctx.reference) + ". Kept the shown reference.", {}};
}

AgentDecision RuleAgent::decide(const UpdateContext& ctx, int) {
    long long sum = 0;
    for (const PeerView& p : ctx.peers) sum += to_int(p.focal_link) * to_int(p.target_link);
    const Sign s = sum != 0 ? sign_of(sum) : ctx.reference;
    std::string why = leading_word(s) + ". The sum of per-peer link products is " +
                      std::to_string(sum) + ".";
    if (sum == 0) why += " Fell back to the shown reference.";
    return {answer_for_sign(s), std::move(why), {}};
}

AgentDecision ScriptedAgent::decide(const UpdateContext& ctx, int iteration) {
    auto it = lines_.find({iteration, ctx.focal, ctx.target});
    if (it == lines_.end())
        throw std::out_of_range("no scripted response for iteration " + std::to_string(iteration) +
                                ", focal " + std::to_string(ctx.focal) + ", target " +
                                std::to_string(ctx.target));
    return {extract_sign(it->second, ctx.kind, dialect_), it->second, {}};
}

}  // namespace signet
