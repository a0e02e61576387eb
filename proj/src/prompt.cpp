#include "signet/prompt.hpp"

#include <stdexcept>

namespace signet {

PromptDialect dialect_from_word(const std::string& w) {
    if (w == "llama") return PromptDialect::LlamaStyle;
    if (w == "mistral") return PromptDialect::MistralStyle;
    throw std::invalid_argument("unknown prompt dialect: " + w);
}

const char* dialect_word(PromptDialect d) {
    switch (d) {
        case PromptDialect::LlamaStyle: return "llama";
        case PromptDialect::MistralStyle: return "mistral";
    }
    throw std::invalid_argument("unknown prompt dialect");
}

InteractionKind kind_from_word(const std::string& w) {
    if (w == "relationship") return InteractionKind::Relationship;
    if (w == "appraisal") return InteractionKind::Appraisal;
    if (w == "opinion") return InteractionKind::Opinion;
    throw std::invalid_argument("unknown interaction kind: " + w);
}

UpdateMechanism mechanism_from_word(const std::string& w) {
    if (w == "homophily") return UpdateMechanism::Homophily;
    if (w == "influence") return UpdateMechanism::Influence;
    throw std::invalid_argument("unknown update mechanism: " + w);
}

namespace {

std::string individual(int index) {
    return "Individual " + std::to_string(index);
}

// First sentence: the focal agent's anchor toward the target. The sentence
// shape is the same under both mechanisms; only the sign value differs.
std::string reference_sentence(const UpdateContext& ctx) {
    if (ctx.kind == InteractionKind::Relationship)
        return "Your current relationship with " + individual(ctx.target) + " is " +
               sign_word(ctx.reference) + ".";
    return std::string("You have a ") + sign_word(ctx.reference) + " " + kind_word(ctx.kind) +
           " of " + individual(ctx.target) + ".";
}

// How the target is linked to peer k.
std::string target_link_sentence(const UpdateContext& ctx, const PeerView& p) {
    if (ctx.kind == InteractionKind::Relationship)
        return individual(ctx.target) + " has a " + sign_word(p.target_link) +
               " relationship with " + individual(p.index) + ".";
    return individual(ctx.target) + " has a " + sign_word(p.target_link) + " " +
           kind_word(ctx.kind) + " of " + individual(p.index) + ".";
}

// How the focal agent is linked to peer k: stated from the focal side under
// homophily and from the peer's side under influence.
std::string focal_link_sentence(const UpdateContext& ctx, const PeerView& p) {
    const bool homophily = ctx.mechanism == UpdateMechanism::Homophily;
    if (ctx.kind == InteractionKind::Relationship) {
        if (homophily)
            return "Your current relationship with " + individual(p.index) + " is " +
                   sign_word(p.focal_link) + ".";
        return individual(p.index) + " has a " + sign_word(p.focal_link) +
               " relationship with you.";
    }
    if (homophily)
        return std::string("You have a ") + sign_word(p.focal_link) + " " +
               kind_word(ctx.kind) + " of " + individual(p.index) + ".";
    return individual(p.index) + " has a " + sign_word(p.focal_link) + " " +
           kind_word(ctx.kind) + " of you.";
}

std::string question_sentence(const UpdateContext& ctx) {
    if (ctx.kind == InteractionKind::Relationship)
        return "Will your new relationship with respect to " + individual(ctx.target) +
               " be negative or positive?";
    return std::string("Will your new ") + kind_word(ctx.kind) + " of " +
           individual(ctx.target) + " be negative or positive?";
}

std::string closing_sentence(const UpdateContext& ctx, PromptDialect dialect) {
    const std::string kind = kind_word(ctx.kind);
    if (dialect == PromptDialect::LlamaStyle)
        return "State the " + kind + " first, and then provide an explanation.";
    // The forced-choice block, reproduced verbatim including the leading
    // "Your must".
    std::string out = "Your must always choose either a \"positive\" or \"negative\" " + kind +
                      ", even if you are uncertain or do not have enough information. ";
    if (ctx.kind != InteractionKind::Relationship)
        out += "A \"neutral\" " + kind + " is not allowed. ";
    out += "Your response must be in the following format:\n\"New " + kind +
           ": [write here \"positive\" or \"negative\"].\" and then \"Justification for answer: "
           "[write here the justification for the new " +
           kind + "].\"";
    return out;
}

}  // namespace

std::string render_prompt(const UpdateContext& ctx, PromptDialect dialect) {
    if (ctx.peers.empty()) throw std::invalid_argument("context has no peers");
    std::string out = reference_sentence(ctx);
    if (ctx.peers.size() == 1) {
        // Three-agent layout: one line of facts, then a space before the
        // newline that introduces the question.
        out += " " + target_link_sentence(ctx, ctx.peers[0]);
        out += " " + focal_link_sentence(ctx, ctx.peers[0]);
        out += " \n";
    } else {
        // General layout: one line per peer, blank line before the question.
        for (const PeerView& p : ctx.peers)
            out += "\n" + target_link_sentence(ctx, p) + " " + focal_link_sentence(ctx, p);
        out += "\n\n";
    }
    out += question_sentence(ctx);
    out += " " + closing_sentence(ctx, dialect);
    return out;
}

}  // namespace signet
