#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "signet/sign.hpp"

namespace signet {

/// Directed sign state of a population at one iteration. Stores exactly
/// m*(m-1) entries; the diagonal does not exist and asking for it throws.
/// Immutable after construction, so instances can be shared freely across
/// threads.
class InteractionMatrix {
  public:
    /// All entries set to `fill`.
    InteractionMatrix(int m, Sign fill) : m_(check_m(m)), entries_(slots(m), fill) {}

    /// Entries supplied row-major with the diagonal skipped:
    /// (0,1),(0,2),...,(0,m-1),(1,0),(1,2),...
    InteractionMatrix(int m, std::vector<Sign> entries) : m_(check_m(m)), entries_(std::move(entries)) {
        if (entries_.size() != slots(m_))
            throw std::invalid_argument("entry count must be m*(m-1)");
    }

    /// Builds from a per-pair generator, same ordered-pair order as above.
    static InteractionMatrix build(int m, const std::function<Sign(int, int)>& fn) {
        std::vector<Sign> e;
        e.reserve(slots(check_m(m)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j) e.push_back(fn(i, j));
        return InteractionMatrix(m, std::move(e));
    }

    int m() const noexcept { return m_; }
    std::size_t entry_count() const noexcept { return entries_.size(); }

    Sign at(int i, int j) const {
        return entries_[index(i, j)];
    }

    bool contains_neutral() const noexcept {
        for (Sign s : entries_)
            if (s == Sign::Neutral) return true;
        return false;
    }

    /// Compact string form, e.g. "+-+0-+" for m=3; inverse of parse().
    std::string to_string() const {
        std::string out;
        out.reserve(entries_.size());
        for (Sign s : entries_) out.push_back(sign_char(s));
        return out;
    }

    static InteractionMatrix parse(int m, const std::string& text) {
        if (text.size() != slots(check_m(m)))
            throw std::invalid_argument("matrix string length must be m*(m-1)");
        std::vector<Sign> e;
        e.reserve(text.size());
        for (char c : text) e.push_back(sign_from_char(c));
        return InteractionMatrix(m, std::move(e));
    }

    bool operator==(const InteractionMatrix& other) const = default;

  private:
    static int check_m(int m) {
        if (m < 3) throw std::invalid_argument("population size must be at least 3");
        return m;
    }
    static std::size_t slots(int m) noexcept { return static_cast<std::size_t>(m) * (m - 1); }

    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= m_ || j >= m_)
            throw std::out_of_range("agent index out of range");
        if (i == j) throw std::invalid_argument("self-interaction is undefined");
        return static_cast<std::size_t>(i) * (m_ - 1) + (j < i ? j : j - 1);
    }

    int m_;
    std::vector<Sign> entries_;
};

}  // namespace signet
