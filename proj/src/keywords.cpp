#include "signet/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace signet {

namespace {

std::string lower(const std::string& s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

int count_bounded(const std::string& haystack, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + 1)) {
        const bool left_ok = pos == 0 || !word_char(haystack[pos - 1]);
        const std::size_t end = pos + needle.size();
        const bool right_ok = end == haystack.size() || !word_char(haystack[end]);
        if (left_ok && right_ok) ++n;
    }
    return n;
}

std::size_t term_index(const KeywordSpec& spec, const std::string& term) {
    auto it = std::find(spec.terms.begin(), spec.terms.end(), term);
    if (it == spec.terms.end()) throw std::invalid_argument("term not in spec: " + term);
    return static_cast<std::size_t>(it - spec.terms.begin());
}

}  // namespace

bool KeywordHits::contains(const KeywordSpec& spec, const std::string& term) const {
    return count(spec, term) > 0;
}

int KeywordHits::count(const KeywordSpec& spec, const std::string& term) const {
    return counts.at(term_index(spec, term));
}

KeywordHits scan_keywords(const std::string& raw, const KeywordSpec& spec) {
    const std::string low = lower(raw);
    KeywordHits hits;
    hits.counts.reserve(spec.terms.size());
    for (const std::string& term : spec.terms) hits.counts.push_back(count_bounded(low, lower(term)));
    return hits;
}

void CooccurrenceTally::add(const KeywordSpec& spec, const KeywordHits& hits) {
    if (!hits.contains(spec, "cognitive")) return;
    ++responses_with_cognitive;
    if (!hits.contains(spec, "cognitive dissonance")) ++responses_with_standalone_cognitive;
}

std::optional<double> CooccurrenceTally::standalone_fraction() const {
    if (responses_with_cognitive == 0) return std::nullopt;
    return static_cast<double>(responses_with_standalone_cognitive) / responses_with_cognitive;
}

}  // namespace signet
