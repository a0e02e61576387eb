#pragma once

#include <stdexcept>
#include <vector>

#include "signet/interaction_matrix.hpp"

namespace signet {

/// What the directed sign between two agents means to them.
enum class InteractionKind { Relationship, Appraisal, Opinion };

/// Which side's current stance anchors an update.
enum class UpdateMechanism { Homophily, Influence };

inline const char* kind_word(InteractionKind k) {
    switch (k) {
        case InteractionKind::Relationship: return "relationship";
        case InteractionKind::Appraisal: return "appraisal";
        case InteractionKind::Opinion: return "opinion";
    }
    throw std::invalid_argument("unknown interaction kind");
}

inline const char* mechanism_word(UpdateMechanism m) {
    switch (m) {
        case UpdateMechanism::Homophily: return "homophily";
        case UpdateMechanism::Influence: return "influence";
    }
    throw std::invalid_argument("unknown update mechanism");
}

InteractionKind kind_from_word(const std::string& w);
UpdateMechanism mechanism_from_word(const std::string& w);

/// One third party as seen from an update: the link between the focal agent
/// and k (direction depends on the mechanism: focal->k under homophily,
/// k->focal under influence) and the link from the target toward k.
struct PeerView {
    int index;
    Sign focal_link;
    Sign target_link;
    bool operator==(const PeerView&) const = default;
};

/// Everything an agent is shown when deciding its new sign toward the target.
/// All signs are read from a single matrix snapshot.
struct UpdateContext {
    InteractionKind kind;
    UpdateMechanism mechanism;
    int focal;
    int target;
    /// s_focal,target under Homophily; s_target,focal under Influence.
    Sign reference;
    /// One entry per agent other than focal and target, ascending by index.
    std::vector<PeerView> peers;
};

/// Assembles the context for focal agent i updating its sign toward j.
inline UpdateContext build_context(const InteractionMatrix& M, int i, int j,
                                   InteractionKind kind, UpdateMechanism mechanism) {
    if (i == j) throw std::invalid_argument("focal and target must differ");
    const bool homophily = mechanism == UpdateMechanism::Homophily;
    UpdateContext ctx{kind, mechanism, i, j,
                      homophily ? M.at(i, j) : M.at(j, i), {}};
    ctx.peers.reserve(M.m() - 2);
    for (int k = 0; k < M.m(); ++k) {
        if (k == i || k == j) continue;
        ctx.peers.push_back(PeerView{k, homophily ? M.at(i, k) : M.at(k, i), M.at(j, k)});
    }
    return ctx;
}

}  // namespace signet
