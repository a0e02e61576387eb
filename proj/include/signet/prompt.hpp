#pragma once

#include <string>

#include "signet/context.hpp"

namespace signet {

/// Prompt wording family. MistralStyle swaps the closing instruction for a
/// forced-choice format block; everything before it is shared.
enum class PromptDialect { LlamaStyle, MistralStyle };

PromptDialect dialect_from_word(const std::string& w);
const char* dialect_word(PromptDialect d);

/// Renders the full prompt text for one update. The three-agent layout and
/// the general layout differ in their whitespace around the question, and
/// both are reproduced exactly; see tests/fixtures/prompts.
std::string render_prompt(const UpdateContext& ctx, PromptDialect dialect);

}  // namespace signet
