#pragma once

#include <optional>
#include <string>
#include <vector>

namespace signet {

/// The tracked justification vocabulary. Single words match on word
/// boundaries ("cognitively" is not "cognitive"); phrases additionally need
/// boundaries at both ends. All matching is case-insensitive.
struct KeywordSpec {
    std::vector<std::string> terms;

    /// The six terms the analysis tracks by default.
    static KeywordSpec standard() {
        return {{"structural balance", "clustering balance", "social balance", "cognitive",
                 "dissonance", "cognitive dissonance"}};
    }
};

/// Occurrence counts for one response, aligned with KeywordSpec::terms.
struct KeywordHits {
    std::vector<int> counts;

    bool contains(const KeywordSpec& spec, const std::string& term) const;
    int count(const KeywordSpec& spec, const std::string& term) const;
};

KeywordHits scan_keywords(const std::string& raw, const KeywordSpec& spec);

/// Running tally of how often "cognitive" shows up detached from the phrase
/// "cognitive dissonance" across a corpus of responses.
struct CooccurrenceTally {
    int responses_with_cognitive = 0;
    int responses_with_standalone_cognitive = 0;

    void add(const KeywordSpec& spec, const KeywordHits& hits);

    /// Standalone fraction, or nothing when "cognitive" never appeared.
    std::optional<double> standalone_fraction() const;
};

}  // namespace signet
