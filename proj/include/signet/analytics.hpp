#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signet/dynamics.hpp"
#include "signet/keywords.hpp"

namespace signet {

/// Aggregation key: everything that must agree for results to be pooled.
struct SettingKey {
    std::string model;
    InteractionKind kind;
    UpdateMechanism mechanism;
    int m = 3;

    auto tie() const { return std::make_tuple(model, kind, mechanism, m); }
    bool operator==(const SettingKey& o) const { return tie() == o.tie(); }
    bool operator<(const SettingKey& o) const { return tie() < o.tie(); }

    /// Filesystem-safe identity used in artifact names.
    std::string label() const;
};

/// Per-simulation facts the balance report needs.
struct SimulationSummary {
    bool valid = true;
    bool aborted = false;
    InteractionMatrix final_state{3, Sign::Neutral};
};

SimulationSummary summarize(const Trajectory& traj);

struct BalanceReport {
    int total = 0;
    int valid = 0;
    int aborted = 0;
    int refusal_simulations = 0;
    int balanced = 0;
    int structurally_balanced = 0;

    /// Share of valid simulations ending balanced; absent without valid runs.
    std::optional<double> frequency_pct() const;
    /// Share of all simulations ending balanced, counting invalid ones as
    /// unbalanced.
    double inclusive_frequency_pct() const;
    /// 'S' when every balanced final is structurally balanced, 'C' when some
    /// ending is balanced only under the weaker notion; absent when nothing
    /// balanced.
    std::optional<char> strictness() const;
    /// True when refusals swallowed too much of the group to report it.
    bool unreported(double refusal_threshold) const;
};

BalanceReport balance_frequency(const std::vector<SimulationSummary>& sims);

/// Counts over the five balanced triad patterns, indexed by
/// BalancedTriadClass. Populations that are not clustering-balanced as a
/// whole contribute nothing.
using TriadHistogram = std::array<int, kBalancedTriadClassCount>;

void accumulate_triad_classes(const InteractionMatrix& final_state, TriadHistogram& bins);
TriadHistogram triad_class_histogram(const std::vector<InteractionMatrix>& finals);

struct StabilityResult {
    int stable = 0;
    int total = 0;
    double pct() const { return total == 0 ? 0.0 : 100.0 * stable / total; }
};

/// Fraction of trajectories that never change at all: every recorded state
/// equals the initialization. Inputs must be seeded from balanced states;
/// anything else throws.
StabilityResult stability_initially_balanced(const std::vector<Trajectory>& trajectories);

/// First state index of the late window: the final ceil(t_max/2) transitions.
int last_half_window_start(int t_max);

/// Fraction of trajectories whose states are identical across the late
/// window, balanced or not. The window starts at last_half_window_start
/// unless a non-negative window_start overrides it.
StabilityResult stability_last_half(const std::vector<Trajectory>& trajectories,
                                    int window_start = -1);

/// Edge and cycle counts for every recorded state of one simulation.
std::vector<EdgeCycleCounts> time_series(const Trajectory& traj);

struct SimSeries {
    int init_index = 0;
    int sim_index = 0;
    std::vector<EdgeCycleCounts> points;
};

struct KeywordReport {
    KeywordSpec spec;
    std::vector<int> responses_with_term;
    int responses = 0;

    double pct(const std::string& term) const;
};

KeywordReport keyword_frequency(const std::vector<KeywordHits>& hits, const KeywordSpec& spec);

/// CSV emitters. Maps iterate in key order, so output bytes are a pure
/// function of content.
std::string balance_csv(const std::map<SettingKey, BalanceReport>& reports,
                        double refusal_threshold);
std::string histogram_csv(const std::map<SettingKey, TriadHistogram>& histograms);
std::string stability_csv(
    const std::map<SettingKey, std::pair<StabilityResult, StabilityResult>>& results);
std::string keyword_csv(const std::map<SettingKey, KeywordReport>& reports);
std::string timeseries_csv(const std::map<SettingKey, std::vector<SimSeries>>& series);

/// Bar chart of the five-bin histogram.
std::string histogram_svg(const TriadHistogram& bins, const std::string& title);
/// Line chart of edge and cycle counts across iterations.
std::string timeseries_svg(const std::vector<EdgeCycleCounts>& points, const std::string& title);

}  // namespace signet
