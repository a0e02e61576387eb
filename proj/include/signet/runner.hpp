#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signet/analytics.hpp"
#include "signet/gateway.hpp"
#include "signet/records.hpp"

namespace signet {

/// Everything one invocation executes: the experiment sweep plus execution
/// and reporting knobs.
struct RunManifest {
    std::vector<ExperimentConfig> sweep;
    std::filesystem::path out_dir = "runs";
    int workers = 4;
    double refusal_threshold = 0.02;
    /// Required whenever a sweep entry uses the "llm" back-end.
    std::optional<EndpointConfig> endpoint;
};

/// Canonical serialization of a configuration; the experiment id hashes it,
/// so every field that changes behavior is part of it.
std::string canonical_config(const ExperimentConfig& cfg);

/// Content-addressed experiment identity; identical configurations collide
/// on purpose so reruns resume instead of forking.
std::string experiment_id(const ExperimentConfig& cfg);

SettingKey setting_key(const ExperimentConfig& cfg);

std::filesystem::path log_path(const std::filesystem::path& out_dir,
                               const ExperimentConfig& cfg);

/// Per-simulation seed, derived so any single simulation is reproducible in
/// isolation from the master seed and its ordinal.
std::uint64_t simulation_seed(const ExperimentConfig& cfg, int ordinal);

/// The starting matrix of one simulation; a pure function of configuration
/// and position so resumed runs regenerate identical inits.
InteractionMatrix planned_initialization(const ExperimentConfig& cfg, int init_index,
                                         int sim_index);

struct RunOutcome {
    std::string experiment;
    std::filesystem::path log_file;
    int executed = 0;
    int skipped = 0;
    int aborted = 0;
    int refusal_simulations = 0;
};

/// Runs one configuration, appending completed simulation blocks to its log
/// in canonical order. Simulations already closed in the log are skipped.
RunOutcome run_experiment(const ExperimentConfig& cfg, const RunManifest& manifest);

/// Runs the whole sweep, writes the manifest file and every report.
std::vector<RunOutcome> run_sweep(const RunManifest& manifest);

/// Report tables plus charts, all derived from logs.
struct ReportBundle {
    std::string balance;
    std::string histogram;
    std::string stability;
    std::string keywords;
    std::string timeseries;
    std::string counts;
    std::map<std::string, std::string> charts;
    int corrupt_lines = 0;
    int dropped_simulations = 0;
    int simulations = 0;
    /// Replay only: decisions whose recorded answer disagrees with the
    /// current parser, and blocks recorded under a different parser version.
    int parse_disagreements = 0;
    int parser_version_mismatches = 0;
};

/// Aggregates every log in the directory, trusting recorded answers.
ReportBundle report_from_logs(const std::filesystem::path& out_dir, double refusal_threshold);

/// Re-runs every completed simulation through a scripted back-end fed with
/// the recorded raw responses, re-parsing them with the current parser, and
/// aggregates the replayed trajectories.
ReportBundle replay_from_logs(const std::filesystem::path& out_dir, double refusal_threshold);

/// Writes the bundle under out_dir/reports; returns the files written.
std::vector<std::filesystem::path> write_reports(const std::filesystem::path& out_dir,
                                                 const ReportBundle& bundle);

/// Renders the twelve canonical contexts (two dialects, three kinds, two
/// mechanisms) and compares each against its golden file in fixtures_dir.
/// Returns one message per mismatch; empty means everything matched.
std::vector<std::string> validate_prompts(const std::filesystem::path& fixtures_dir);

}  // namespace signet
