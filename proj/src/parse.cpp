#include "signet/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <vector>

namespace signet {

const char* parsed_answer_word(ParsedAnswer a) {
    switch (a) {
        case ParsedAnswer::Positive: return "positive";
        case ParsedAnswer::Negative: return "negative";
        case ParsedAnswer::Neutral: return "neutral";
        case ParsedAnswer::NeutralOrPositive: return "neutral_or_positive";
        case ParsedAnswer::NeutralOrNegative: return "neutral_or_negative";
        case ParsedAnswer::Refusal: return "refusal";
    }
    throw std::invalid_argument("unknown parsed answer");
}

ParsedAnswer parsed_answer_from_word(const std::string& w) {
    if (w == "positive") return ParsedAnswer::Positive;
    if (w == "negative") return ParsedAnswer::Negative;
    if (w == "neutral") return ParsedAnswer::Neutral;
    if (w == "neutral_or_positive") return ParsedAnswer::NeutralOrPositive;
    if (w == "neutral_or_negative") return ParsedAnswer::NeutralOrNegative;
    if (w == "refusal") return ParsedAnswer::Refusal;
    throw std::invalid_argument("unknown parsed answer: " + w);
}

namespace {

std::string lower(const std::string& s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Alphabetic words only; punctuation and markdown dissolve into separators.
std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalpha(c)) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?' || c == '\n') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_polarity(const std::string& t) { return t == "positive" || t == "negative"; }

// Words that turn an otherwise matching sentence into a non-answer.
bool is_inability(const std::string& t) {
    return t == "uncertain" || t == "impossible" || t == "unclear" || t == "unknown" ||
           t == "undetermined";
}

// Reads the first polarity statement from a token stream. Skips mirrored
// pairs like "positive or negative", which only echo the question. When
// `hedged_only` is set, bare polarity words are ignored and only the
// "slightly X" / "neutral or slightly X" shapes count.
std::optional<ParsedAnswer> match_polarity(const std::vector<std::string>& t, std::size_t from,
                                           bool hedged_only, bool stop_on_inability) {
    for (std::size_t i = from; i < t.size(); ++i) {
        if (stop_on_inability && is_inability(t[i])) return std::nullopt;
        if (t[i] == "neutral") {
            if (i + 3 < t.size() && t[i + 1] == "or" && t[i + 2] == "slightly" &&
                is_polarity(t[i + 3]))
                return t[i + 3] == "positive" ? ParsedAnswer::NeutralOrPositive
                                              : ParsedAnswer::NeutralOrNegative;
            if (!hedged_only) return ParsedAnswer::Neutral;
            continue;
        }
        if (t[i] == "slightly" && i + 1 < t.size() && is_polarity(t[i + 1]))
            return t[i + 1] == "positive" ? ParsedAnswer::Positive : ParsedAnswer::Negative;
        if (is_polarity(t[i])) {
            if (i + 2 < t.size() && t[i + 1] == "or" && is_polarity(t[i + 2]) &&
                t[i + 2] != t[i]) {
                i += 2;  // question echo, not an answer
                continue;
            }
            if (!hedged_only)
                return t[i] == "positive" ? ParsedAnswer::Positive : ParsedAnswer::Negative;
        }
    }
    return std::nullopt;
}

// Looks for the structured "New {kind}:" header the forced-choice prompt
// demands, trying each occurrence until one carries a readable answer.
std::optional<ParsedAnswer> match_header(const std::string& low, const std::string& kind) {
    const std::string header = "new " + kind + ":";
    for (std::size_t pos = low.find(header); pos != std::string::npos;
         pos = low.find(header, pos + 1)) {
        std::size_t end = low.find_first_of(".!?\n", pos + header.size());
        if (end == std::string::npos) end = low.size();
        auto tokens = tokenize(low.substr(pos + header.size(), end - (pos + header.size())));
        if (auto a = match_polarity(tokens, 0, false, false)) return a;
    }
    return std::nullopt;
}

}  // namespace

ParsedAnswer extract_sign(const std::string& raw, InteractionKind kind, PromptDialect dialect) {
    const std::string low = lower(raw);

    if (dialect == PromptDialect::MistralStyle)
        if (auto a = match_header(low, kind_word(kind))) return *a;

    const auto sentences = split_sentences(low);

    for (const std::string& sentence : sentences) {
        auto tokens = tokenize(sentence);
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
            if (tokens[i] == "will" && tokens[i + 1] == "be")
                if (auto a = match_polarity(tokens, i + 2, false, true)) return *a;
    }

    if (!sentences.empty()) {
        auto first = tokenize(sentences.front());
        if (!first.empty() &&
            (is_polarity(first[0]) || first[0] == "neutral" || first[0] == "slightly"))
            if (auto a = match_polarity(first, 0, false, false)) return *a;
    }

    if (auto a = match_polarity(tokenize(low), 0, true, false)) return *a;

    return ParsedAnswer::Refusal;
}

}  // namespace signet
