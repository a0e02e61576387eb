#pragma once

#include <optional>
#include <vector>

#include "signet/interaction_matrix.hpp"

namespace signet {

/// Unordered triple of distinct agents, kept in increasing order.
struct Triad {
    int i, j, k;
    bool operator==(const Triad&) const = default;
};

/// The five dyad-sign patterns a triad may take in a balanced population,
/// read in the order (s_ij, s_jk, s_ki) for i < j < k. The first four have
/// cycle product +1; NegNegNeg is admitted only under the clustering notion.
enum class BalancedTriadClass {
    NegNegPos,
    NegPosNeg,
    PosNegNeg,
    PosPosPos,
    NegNegNeg,
};

inline constexpr int kBalancedTriadClassCount = 5;

/// Short label such as "--+" used in report output.
const char* triad_class_label(BalancedTriadClass c);

/// True when every opposite pair of entries agrees (s_ij == s_ji for all pairs).
bool is_symmetric(const InteractionMatrix& m);

/// Product s_ij * s_jk * s_ki along the triad. Neutral anywhere yields Neutral.
Sign triad_cycle_product(const InteractionMatrix& m, const Triad& t);

/// Classifies a dyad-sign triple against the five balanced patterns.
/// Returns nullopt for the unbalanced patterns and for any neutral input.
std::optional<BalancedTriadClass> classify_balanced_triad(Sign a, Sign b, Sign c);

/// Balance under the strict notion: the matrix is symmetric, contains no
/// neutral entries, and every triad has cycle product +1.
bool is_structurally_balanced(const InteractionMatrix& m);

/// Balance under the weaker notion that additionally admits all-negative
/// triads. Same symmetry and no-neutral requirements.
bool is_clustering_balanced(const InteractionMatrix& m);

/// All C(m,3) triads in lexicographic order. Throws for m < 3.
std::vector<Triad> enumerate_triads(int m);

/// The 64 neutral-free sign assignments for a three-agent population.
/// Assignment b maps entry e of the order (0,1),(0,2),(1,0),(1,2),(2,0),(2,1)
/// to positive when bit e of b is set and to negative otherwise, so index 0
/// is all-negative and index 63 all-positive.
std::vector<InteractionMatrix> enumerate_triad_initializations();

struct EdgeCycleCounts {
    int positive_edges = 0;
    int negative_edges = 0;
    int positive_cycles = 0;
    bool operator==(const EdgeCycleCounts&) const = default;
};

/// Counts positive and negative directed entries, plus directed three-cycles
/// with positive sign product. Each triad contributes its two orientations
/// (i->j->k->i and i->k->j->i) separately.
EdgeCycleCounts edge_and_cycle_counts(const InteractionMatrix& m);

}  // namespace signet
