#pragma once

#include <string>

#include "signet/prompt.hpp"

namespace signet {

/// What a response declares, including the hedged forms agents sometimes use
/// instead of a flat positive/negative. Refusal covers both explicit
/// inability statements and responses no heuristic can read.
enum class ParsedAnswer {
    Positive,
    Negative,
    Neutral,
    NeutralOrPositive,
    NeutralOrNegative,
    Refusal,
};

const char* parsed_answer_word(ParsedAnswer a);
ParsedAnswer parsed_answer_from_word(const std::string& w);

/// Bumped whenever extraction heuristics change, and stored in run logs so a
/// replay can tell whether recorded decisions came from the same rules.
inline constexpr int kParserVersion = 1;

/// Reads the declared sign out of a raw response.
///
/// MistralStyle first looks for the requested "New {kind}:" header. That
/// failing (and always for LlamaStyle), free-text heuristics apply in order:
/// a sentence of the form "... will be <polarity>", a response-leading
/// polarity word, then hedged forms ("neutral or slightly X", "slightly X")
/// anywhere. Echoes of the question's "negative or positive" pair are
/// ignored. Anything left unread is a Refusal.
ParsedAnswer extract_sign(const std::string& raw, InteractionKind kind, PromptDialect dialect);

}  // namespace signet
