#include "signet/balance.hpp"

#include <stdexcept>

namespace signet {

const char* triad_class_label(BalancedTriadClass c) {
    switch (c) {
        case BalancedTriadClass::NegNegPos: return "--+";
        case BalancedTriadClass::NegPosNeg: return "-+-";
        case BalancedTriadClass::PosNegNeg: return "+--";
        case BalancedTriadClass::PosPosPos: return "+++";
        case BalancedTriadClass::NegNegNeg: return "---";
    }
    throw std::invalid_argument("unknown triad class");
}

bool is_symmetric(const InteractionMatrix& m) {
    for (int i = 0; i < m.m(); ++i)
        for (int j = i + 1; j < m.m(); ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

Sign triad_cycle_product(const InteractionMatrix& m, const Triad& t) {
    return m.at(t.i, t.j) * m.at(t.j, t.k) * m.at(t.k, t.i);
}

std::optional<BalancedTriadClass> classify_balanced_triad(Sign a, Sign b, Sign c) {
    if (a == Sign::Neutral || b == Sign::Neutral || c == Sign::Neutral) return std::nullopt;
    const int negatives = (a == Sign::Negative) + (b == Sign::Negative) + (c == Sign::Negative);
    switch (negatives) {
        case 0: return BalancedTriadClass::PosPosPos;
        case 3: return BalancedTriadClass::NegNegNeg;
        case 2:
            if (a == Sign::Positive) return BalancedTriadClass::PosNegNeg;
            if (b == Sign::Positive) return BalancedTriadClass::NegPosNeg;
            return BalancedTriadClass::NegNegPos;
        default: return std::nullopt;
    }
}

bool is_structurally_balanced(const InteractionMatrix& m) {
    if (m.contains_neutral() || !is_symmetric(m)) return false;
    for (const Triad& t : enumerate_triads(m.m()))
        if (triad_cycle_product(m, t) != Sign::Positive) return false;
    return true;
}

bool is_clustering_balanced(const InteractionMatrix& m) {
    if (m.contains_neutral() || !is_symmetric(m)) return false;
    for (const Triad& t : enumerate_triads(m.m()))
        if (!classify_balanced_triad(m.at(t.i, t.j), m.at(t.j, t.k), m.at(t.k, t.i)))
            return false;
    return true;
}

std::vector<Triad> enumerate_triads(int m) {
    if (m < 3) throw std::invalid_argument("triads need at least three agents");
    std::vector<Triad> out;
    out.reserve(static_cast<std::size_t>(m) * (m - 1) * (m - 2) / 6);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) out.push_back(Triad{i, j, k});
    return out;
}

std::vector<InteractionMatrix> enumerate_triad_initializations() {
    std::vector<InteractionMatrix> out;
    out.reserve(64);
    for (int b = 0; b < 64; ++b) {
        std::vector<Sign> entries(6);
        for (int e = 0; e < 6; ++e)
            entries[e] = (b >> e) & 1 ? Sign::Positive : Sign::Negative;
        out.emplace_back(3, std::move(entries));
    }
    return out;
}

EdgeCycleCounts edge_and_cycle_counts(const InteractionMatrix& m) {
    EdgeCycleCounts counts;
    for (int i = 0; i < m.m(); ++i)
        for (int j = 0; j < m.m(); ++j) {
            if (i == j) continue;
            if (m.at(i, j) == Sign::Positive) ++counts.positive_edges;
            if (m.at(i, j) == Sign::Negative) ++counts.negative_edges;
        }
    for (const Triad& t : enumerate_triads(m.m())) {
        if (m.at(t.i, t.j) * m.at(t.j, t.k) * m.at(t.k, t.i) == Sign::Positive) ++counts.positive_cycles;
        if (m.at(t.i, t.k) * m.at(t.k, t.j) * m.at(t.j, t.i) == Sign::Positive) ++counts.positive_cycles;
    }
    return counts;
}

}  // namespace signet
