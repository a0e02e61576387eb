#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "signet/dynamics.hpp"
#include "signet/keywords.hpp"

namespace signet {

/// Opening record of one simulation block in a run log.
struct SimStartRecord {
    std::string experiment;
    std::string model;
    InteractionKind kind = InteractionKind::Relationship;
    UpdateMechanism mechanism = UpdateMechanism::Homophily;
    PromptDialect dialect = PromptDialect::LlamaStyle;
    int m = 3;
    int init_index = 0;
    int sim_index = 0;
    std::uint64_t seed = 0;
    std::string init;
    int t_max = 10;
    int parser_version = kParserVersion;
};

/// One focal-to-target decision. The raw response is stored verbatim; the
/// sign is the one actually written into the next matrix, so a refusal
/// carries the retained prior sign.
struct DecisionRecord {
    std::string experiment;
    int init_index = 0;
    int sim_index = 0;
    int t = 0;
    int focal = 0;
    int target = 0;
    std::string prompt_hash;
    std::string raw;
    ParsedAnswer parsed = ParsedAnswer::Refusal;
    Sign sign = Sign::Neutral;
    bool refusal = false;
    KeywordHits keywords;
    std::int64_t latency_ms = 0;
};

/// Closing record of one simulation block.
struct SimEndRecord {
    std::string experiment;
    int init_index = 0;
    int sim_index = 0;
    bool valid = true;
    bool aborted = false;
    std::string final_state;
    int refusals = 0;
};

using LogRecord = std::variant<SimStartRecord, DecisionRecord, SimEndRecord>;

std::string to_log_line(const SimStartRecord& r);
std::string to_log_line(const DecisionRecord& r);
std::string to_log_line(const SimEndRecord& r);

/// Parses one log line; throws std::invalid_argument on anything malformed.
LogRecord parse_log_line(const std::string& line);

struct LogContents {
    std::vector<SimStartRecord> starts;
    std::vector<DecisionRecord> decisions;
    std::vector<SimEndRecord> ends;
    int corrupt_lines = 0;
};

/// Reads a whole log, skipping corrupt lines but counting them.
LogContents read_log(std::istream& in);

/// Identity of one simulation inside an experiment.
using SimKey = std::pair<int, int>;

inline SimKey sim_key(const SimStartRecord& r) { return {r.init_index, r.sim_index}; }
inline SimKey sim_key(const DecisionRecord& r) { return {r.init_index, r.sim_index}; }
inline SimKey sim_key(const SimEndRecord& r) { return {r.init_index, r.sim_index}; }

/// Simulations whose closing record made it to disk.
std::set<SimKey> completed_simulations(const LogContents& log);

/// Raw responses of one simulation keyed by (t, focal, target), the shape a
/// scripted back-end replays from.
std::map<std::tuple<int, int, int>, std::string> scripted_lines(
    const std::vector<DecisionRecord>& decisions);

/// Produces the records for one finished simulation. Prompt hashes are
/// recomputed from the recorded states, so they are a pure function of the
/// trajectory.
SimStartRecord make_sim_start(const std::string& experiment, const ExperimentConfig& cfg,
                              int init_index, int sim_index, std::uint64_t seed,
                              const InteractionMatrix& init);
std::vector<DecisionRecord> make_decision_records(const std::string& experiment,
                                                  const ExperimentConfig& cfg, int init_index,
                                                  int sim_index, const Trajectory& traj,
                                                  const KeywordSpec& spec);
SimEndRecord make_sim_end(const std::string& experiment, int init_index, int sim_index,
                          const Trajectory& traj);

/// Rebuilds the full matrix sequence of one simulation from its records.
/// When the closing record is present its final state must match the
/// reconstruction; a mismatch throws std::invalid_argument.
Trajectory reconstruct_trajectory(const SimStartRecord& start,
                                  std::vector<DecisionRecord> decisions,
                                  const SimEndRecord* end = nullptr);

}  // namespace signet
