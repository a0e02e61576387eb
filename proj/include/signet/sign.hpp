#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace signet {

/// Ternary interaction value. Initial states use only Negative/Positive;
/// Neutral can appear from iteration 1 onward.
enum class Sign : std::int8_t {
    Negative = -1,
    Neutral = 0,
    Positive = 1,
};

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

constexpr Sign sign_from_int(int v) {
    if (v < -1 || v > 1) throw std::invalid_argument("sign value must be -1, 0 or +1");
    return static_cast<Sign>(v);
}

/// Sign of an arbitrary integer (used for summing peer products).
constexpr Sign sign_of(long long v) noexcept {
    return v > 0 ? Sign::Positive : v < 0 ? Sign::Negative : Sign::Neutral;
}

/// Closed multiplication on {-1,0,+1}; Neutral absorbs.
constexpr Sign operator*(Sign a, Sign b) noexcept {
    return static_cast<Sign>(to_int(a) * to_int(b));
}

/// Prompt wording for a sign ("positive", "negative", "neutral").
inline const std::string& sign_word(Sign s) {
    static const std::string neg = "negative";
    static const std::string neu = "neutral";
    static const std::string pos = "positive";
    switch (s) {
        case Sign::Negative: return neg;
        case Sign::Neutral: return neu;
        default: return pos;
    }
}

/// Single-character encoding used in logs and matrix serialization.
constexpr char sign_char(Sign s) noexcept {
    return s == Sign::Positive ? '+' : s == Sign::Negative ? '-' : '0';
}

constexpr Sign sign_from_char(char c) {
    switch (c) {
        case '+': return Sign::Positive;
        case '-': return Sign::Negative;
        case '0': return Sign::Neutral;
        default: throw std::invalid_argument(std::string("bad sign character: ") + c);
    }
}

}  // namespace signet
