#include "signet/runner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "signet/hash.hpp"

namespace signet {

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct SimStats {
    bool aborted = false;
    bool invalid = false;
};

std::unique_ptr<AgentBackend> make_agent(const ExperimentConfig& cfg,
                                         const RunManifest& manifest) {
    if (cfg.backend == "rule") return std::make_unique<RuleAgent>();
    if (cfg.backend == "echo") return std::make_unique<EchoAgent>();
    if (cfg.backend == "constant-positive")
        return std::make_unique<ConstantAgent>(Sign::Positive);
    if (cfg.backend == "constant-negative")
        return std::make_unique<ConstantAgent>(Sign::Negative);
    if (cfg.backend == "llm") {
        if (!manifest.endpoint.has_value())
            throw std::invalid_argument("the llm back-end needs an endpoint configuration");
        EndpointConfig endpoint = *manifest.endpoint;
        if (endpoint.model.empty()) endpoint.model = cfg.model_label;
        return std::make_unique<LlmAgent>(std::make_shared<ChatClient>(std::move(endpoint)),
                                          cfg.dialect);
    }
    throw std::invalid_argument("unknown back-end: " + cfg.backend);
}

struct Plan {
    int init_index;
    int sim_index;
    int ordinal;
};

std::vector<Plan> plan_simulations(const ExperimentConfig& cfg) {
    std::vector<Plan> plans;
    if (cfg.init_mode == InitMode::ExhaustiveTriad) {
        plans.reserve(static_cast<std::size_t>(64) * cfg.n);
        for (int init_index = 0; init_index < 64; ++init_index)
            for (int sim_index = 0; sim_index < cfg.n; ++sim_index)
                plans.push_back({init_index, sim_index, init_index * cfg.n + sim_index});
    } else {
        plans.reserve(static_cast<std::size_t>(cfg.n));
        for (int sim_index = 0; sim_index < cfg.n; ++sim_index)
            plans.push_back({0, sim_index, sim_index});
    }
    return plans;
}

std::string simulate_block(const ExperimentConfig& cfg, const std::string& id,
                           AgentBackend& agent, const Plan& plan, const KeywordSpec& spec,
                           SimStats& stats) {
    const InteractionMatrix init =
        planned_initialization(cfg, plan.init_index, plan.sim_index);
    Trajectory traj = run_simulation(cfg, init, agent);
    stats.aborted = traj.aborted;
    stats.invalid = !traj.valid && !traj.aborted;

    std::string block =
        to_log_line(make_sim_start(id, cfg, plan.init_index, plan.sim_index,
                                   simulation_seed(cfg, plan.ordinal), init)) +
        "\n";
    for (const auto& d :
         make_decision_records(id, cfg, plan.init_index, plan.sim_index, traj, spec))
        block += to_log_line(d) + "\n";
    block += to_log_line(make_sim_end(id, plan.init_index, plan.sim_index, traj)) + "\n";
    return block;
}

/// One completed simulation as read back from a log.
struct SimData {
    SimStartRecord start;
    std::vector<DecisionRecord> decisions;
    SimEndRecord end;
};

struct Collected {
    /// Within a setting, simulations are ordered by (experiment,
    /// init_index, sim_index) so aggregation ignores log line order.
    std::map<SettingKey, std::vector<SimData>> by_setting;
    int corrupt_lines = 0;
    int dropped_simulations = 0;
};

SettingKey start_key(const SimStartRecord& start) {
    return SettingKey{start.model, start.kind, start.mechanism, start.m};
}

Collected collect_logs(const fs::path& out_dir) {
    Collected collected;
    std::vector<fs::path> files;
    if (fs::exists(out_dir))
        for (const auto& entry : fs::directory_iterator(out_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    using BlockKey = std::tuple<std::string, int, int>;
    std::map<BlockKey, SimData> blocks;
    std::map<BlockKey, std::map<std::tuple<int, int, int>, DecisionRecord>> pending_decisions;
    std::set<BlockKey> closed;

    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        LogContents log = read_log(in);
        collected.corrupt_lines += log.corrupt_lines;
        for (auto& start : log.starts) {
            BlockKey key{start.experiment, start.init_index, start.sim_index};
            blocks[key].start = std::move(start);
        }
        for (auto& d : log.decisions) {
            BlockKey key{d.experiment, d.init_index, d.sim_index};
            // Later lines supersede earlier ones, so a redone simulation
            // replaces the partial block an interrupted run left behind.
            pending_decisions[key][std::make_tuple(d.t, d.focal, d.target)] = std::move(d);
        }
        for (auto& end : log.ends) {
            BlockKey key{end.experiment, end.init_index, end.sim_index};
            blocks[key].end = std::move(end);
            closed.insert(key);
        }
    }

    for (auto& [key, data] : blocks) {
        if (closed.count(key) == 0) continue;  // interrupted; a rerun will redo it
        auto& ordered = pending_decisions[key];
        data.decisions.reserve(ordered.size());
        for (auto& [dkey, d] : ordered) data.decisions.push_back(std::move(d));
        if (data.start.experiment.empty()) {
            ++collected.dropped_simulations;
            continue;
        }
        collected.by_setting[start_key(data.start)].push_back(std::move(data));
    }
    return collected;
}

struct SettingAccumulator {
    std::vector<SimulationSummary> summaries;
    std::vector<InteractionMatrix> valid_finals;
    std::vector<Trajectory> complete;
    std::vector<Trajectory> balanced_start;
    std::vector<KeywordHits> hits;
    std::vector<SimSeries> series;
    long long decisions = 0;
    long long expected_decisions = 0;
    int simulations = 0;
    int complete_simulations = 0;
};

ReportBundle aggregate(std::map<SettingKey, std::vector<std::pair<SimData, Trajectory>>>&& data,
                       double refusal_threshold) {
    const KeywordSpec spec = KeywordSpec::standard();
    ReportBundle bundle;

    std::map<SettingKey, BalanceReport> balance;
    std::map<SettingKey, TriadHistogram> histograms;
    std::map<SettingKey, std::pair<StabilityResult, StabilityResult>> stability;
    std::map<SettingKey, KeywordReport> keywords;
    std::map<SettingKey, std::vector<SimSeries>> series;
    std::string counts =
        "model,kind,mechanism,m,simulations,complete,decisions,expected_decisions,consistent\n";

    for (auto& [key, sims] : data) {
        SettingAccumulator acc;
        for (auto& [sim, traj] : sims) {
            ++acc.simulations;
            ++bundle.simulations;
            acc.summaries.push_back(summarize(traj));
            if (!traj.aborted) {
                ++acc.complete_simulations;
                acc.decisions = acc.decisions + static_cast<long long>(sim.decisions.size());
                acc.expected_decisions += static_cast<long long>(sim.start.t_max) * key.m *
                                          (key.m - 1);
                acc.complete.push_back(traj);
                if (is_clustering_balanced(traj.matrices.front()))
                    acc.balanced_start.push_back(traj);
                if (traj.valid) acc.valid_finals.push_back(traj.final_state());
            }
            for (const auto& d : sim.decisions) acc.hits.push_back(d.keywords);
            SimSeries s;
            s.init_index = sim.start.init_index;
            s.sim_index = sim.start.sim_index;
            s.points = time_series(traj);
            acc.series.push_back(std::move(s));
        }

        balance[key] = balance_frequency(acc.summaries);
        histograms[key] = triad_class_histogram(acc.valid_finals);
        stability[key] = {stability_initially_balanced(acc.balanced_start),
                          stability_last_half(acc.complete)};
        keywords[key] = keyword_frequency(acc.hits, spec);
        series[key] = std::move(acc.series);

        const bool consistent = acc.decisions == acc.expected_decisions;
        counts += key.model + "," + kind_word(key.kind) + "," + mechanism_word(key.mechanism) +
                  "," + std::to_string(key.m) + "," + std::to_string(acc.simulations) + "," +
                  std::to_string(acc.complete_simulations) + "," +
                  std::to_string(acc.decisions) + "," + std::to_string(acc.expected_decisions) +
                  "," + (consistent ? "yes" : "no") + "\n";
    }

    bundle.balance = balance_csv(balance, refusal_threshold);
    bundle.histogram = histogram_csv(histograms);
    bundle.stability = stability_csv(stability);
    bundle.keywords = keyword_csv(keywords);
    bundle.timeseries = timeseries_csv(series);
    bundle.counts = std::move(counts);

    for (const auto& [key, bins] : histograms)
        bundle.charts["histogram_" + key.label() + ".svg"] = histogram_svg(bins, key.label());
    for (const auto& [key, sims] : series)
        if (!sims.empty())
            bundle.charts["timeseries_" + key.label() + ".svg"] =
                timeseries_svg(sims.front().points, key.label());
    return bundle;
}

}  // namespace

std::string canonical_config(const ExperimentConfig& cfg) {
    std::string model = cfg.model_label.empty() ? cfg.backend : cfg.model_label;
    return "m=" + std::to_string(cfg.m) + ";n=" + std::to_string(cfg.n) +
           ";t_max=" + std::to_string(cfg.t_max) + ";kind=" + kind_word(cfg.kind) +
           ";mechanism=" + mechanism_word(cfg.mechanism) +
           ";init=" + init_mode_word(cfg.init_mode) + ";seed=" + hex64(cfg.seed) +
           ";backend=" + cfg.backend + ";model=" + model +
           ";dialect=" + dialect_word(cfg.dialect);
}

std::string experiment_id(const ExperimentConfig& cfg) {
    return hex64(fnv1a64(canonical_config(cfg)));
}

SettingKey setting_key(const ExperimentConfig& cfg) {
    return SettingKey{cfg.model_label.empty() ? cfg.backend : cfg.model_label, cfg.kind,
                      cfg.mechanism, cfg.m};
}

std::filesystem::path log_path(const std::filesystem::path& out_dir,
                               const ExperimentConfig& cfg) {
    return out_dir / (setting_key(cfg).label() + "_" + experiment_id(cfg) + ".jsonl");
}

std::uint64_t simulation_seed(const ExperimentConfig& cfg, int ordinal) {
    return derive_seed(cfg.seed, fnv1a64(canonical_config(cfg)),
                       static_cast<std::uint64_t>(ordinal));
}

InteractionMatrix planned_initialization(const ExperimentConfig& cfg, int init_index,
                                         int sim_index) {
    if (cfg.init_mode == InitMode::ExhaustiveTriad) {
        const auto inits = enumerate_triad_initializations();
        return inits.at(static_cast<std::size_t>(init_index));
    }
    std::mt19937_64 rng(simulation_seed(cfg, sim_index));
    return random_initialization(cfg.m, rng);
}

RunOutcome run_experiment(const ExperimentConfig& cfg, const RunManifest& manifest) {
    cfg.validate();
    const std::string id = experiment_id(cfg);
    fs::create_directories(manifest.out_dir);
    const fs::path path = log_path(manifest.out_dir, cfg);

    std::set<SimKey> done;
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        done = completed_simulations(read_log(in));
    }

    std::vector<Plan> plans;
    RunOutcome outcome;
    outcome.experiment = id;
    outcome.log_file = path;
    for (const Plan& plan : plan_simulations(cfg)) {
        if (done.count({plan.init_index, plan.sim_index}) != 0)
            ++outcome.skipped;
        else
            plans.push_back(plan);
    }
    if (plans.empty()) return outcome;

    std::unique_ptr<AgentBackend> agent = make_agent(cfg, manifest);
    const KeywordSpec spec = KeywordSpec::standard();

    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot open log for writing: " + path.string());

    std::atomic<std::size_t> next_task{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::size_t, std::pair<std::string, SimStats>> ready;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            const std::size_t index = next_task.fetch_add(1);
            if (index >= plans.size()) return;
            std::string block;
            SimStats stats;
            try {
                block = simulate_block(cfg, id, *agent, plans[index], spec, stats);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                ready.emplace(index, std::make_pair(std::move(block), stats));
            }
            cv.notify_all();
        }
    };

    const int worker_count =
        std::max(1, std::min<int>(manifest.workers, static_cast<int>(plans.size())));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) workers.emplace_back(work);

    for (std::size_t written = 0; written < plans.size(); ++written) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return ready.count(written) != 0; });
        auto [block, stats] = std::move(ready.at(written));
        ready.erase(written);
        lock.unlock();

        out << block;
        out.flush();
        ++outcome.executed;
        if (stats.aborted) ++outcome.aborted;
        if (stats.invalid) ++outcome.refusal_simulations;
    }
    for (auto& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
    return outcome;
}

std::vector<RunOutcome> run_sweep(const RunManifest& manifest) {
    std::vector<RunOutcome> outcomes;
    outcomes.reserve(manifest.sweep.size());
    for (const ExperimentConfig& cfg : manifest.sweep)
        outcomes.push_back(run_experiment(cfg, manifest));

    nlohmann::json doc;
    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &parts);
    doc["created_at"] = stamp;
    doc["workers"] = manifest.workers;
    doc["refusal_threshold"] = manifest.refusal_threshold;
    doc["experiments"] = nlohmann::json::array();
    for (std::size_t i = 0; i < manifest.sweep.size(); ++i) {
        const ExperimentConfig& cfg = manifest.sweep[i];
        nlohmann::json entry;
        entry["id"] = outcomes[i].experiment;
        entry["log"] = outcomes[i].log_file.filename().string();
        entry["config"] = canonical_config(cfg);
        doc["experiments"].push_back(entry);
    }
    std::ofstream meta(manifest.out_dir / "manifest.json", std::ios::binary);
    meta << doc.dump(2) << "\n";

    write_reports(manifest.out_dir, report_from_logs(manifest.out_dir,
                                                     manifest.refusal_threshold));
    return outcomes;
}

ReportBundle report_from_logs(const std::filesystem::path& out_dir, double refusal_threshold) {
    Collected collected = collect_logs(out_dir);
    std::map<SettingKey, std::vector<std::pair<SimData, Trajectory>>> data;
    int dropped = collected.dropped_simulations;
    for (auto& [key, sims] : collected.by_setting) {
        for (auto& sim : sims) {
            try {
                Trajectory traj = reconstruct_trajectory(sim.start, sim.decisions, &sim.end);
                data[key].emplace_back(std::move(sim), std::move(traj));
            } catch (const std::invalid_argument&) {
                ++dropped;
            }
        }
    }
    ReportBundle bundle = aggregate(std::move(data), refusal_threshold);
    bundle.corrupt_lines = collected.corrupt_lines;
    bundle.dropped_simulations = dropped;
    return bundle;
}

ReportBundle replay_from_logs(const std::filesystem::path& out_dir, double refusal_threshold) {
    Collected collected = collect_logs(out_dir);
    const KeywordSpec spec = KeywordSpec::standard();
    std::map<SettingKey, std::vector<std::pair<SimData, Trajectory>>> data;
    int dropped = collected.dropped_simulations;
    int disagreements = 0;
    int version_mismatches = 0;

    for (auto& [key, sims] : collected.by_setting) {
        for (auto& sim : sims) {
            if (sim.start.parser_version != kParserVersion) ++version_mismatches;
            for (const auto& d : sim.decisions)
                if (extract_sign(d.raw, sim.start.kind, sim.start.dialect) != d.parsed)
                    ++disagreements;
            try {
                const int steps = sim.start.m > 1
                                      ? static_cast<int>(sim.decisions.size()) /
                                            (sim.start.m * (sim.start.m - 1))
                                      : 0;
                ExperimentConfig cfg;
                cfg.m = sim.start.m;
                cfg.t_max = steps;
                cfg.kind = sim.start.kind;
                cfg.mechanism = sim.start.mechanism;
                cfg.dialect = sim.start.dialect;
                cfg.model_label = sim.start.model;

                InteractionMatrix init = InteractionMatrix::parse(sim.start.m, sim.start.init);
                ScriptedAgent agent(scripted_lines(sim.decisions), sim.start.dialect);
                Trajectory traj = run_simulation(cfg, init, agent);
                traj.aborted = sim.end.aborted;

                SimData replayed;
                replayed.start = sim.start;
                replayed.decisions = make_decision_records(
                    sim.start.experiment, cfg, sim.start.init_index, sim.start.sim_index, traj,
                    spec);
                replayed.end = make_sim_end(sim.start.experiment, sim.start.init_index,
                                            sim.start.sim_index, traj);
                data[key].emplace_back(std::move(replayed), std::move(traj));
            } catch (const std::exception&) {
                ++dropped;
            }
        }
    }

    ReportBundle bundle = aggregate(std::move(data), refusal_threshold);
    bundle.corrupt_lines = collected.corrupt_lines;
    bundle.dropped_simulations = dropped;
    bundle.parse_disagreements = disagreements;
    bundle.parser_version_mismatches = version_mismatches;
    return bundle;
}

std::vector<std::filesystem::path> write_reports(const std::filesystem::path& out_dir,
                                                 const ReportBundle& bundle) {
    const fs::path dir = out_dir / "reports";
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path file = dir / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        written.push_back(file);
    };
    emit("balance.csv", bundle.balance);
    emit("histogram.csv", bundle.histogram);
    emit("stability.csv", bundle.stability);
    emit("keywords.csv", bundle.keywords);
    emit("timeseries.csv", bundle.timeseries);
    emit("counts.csv", bundle.counts);
    for (const auto& [name, svg] : bundle.charts) emit(name, svg);
    return written;
}

std::vector<std::string> validate_prompts(const std::filesystem::path& fixtures_dir) {
    const InteractionMatrix golden = InteractionMatrix::parse(3, "++---+");
    std::vector<std::string> failures;
    for (PromptDialect dialect : {PromptDialect::LlamaStyle, PromptDialect::MistralStyle}) {
        for (InteractionKind kind : {InteractionKind::Relationship, InteractionKind::Appraisal,
                                     InteractionKind::Opinion}) {
            for (UpdateMechanism mechanism :
                 {UpdateMechanism::Homophily, UpdateMechanism::Influence}) {
                const std::string name = std::string(dialect_word(dialect)) + "_" +
                                         kind_word(kind) + "_" + mechanism_word(mechanism) +
                                         ".txt";
                const fs::path file = fixtures_dir / name;
                if (!fs::exists(file)) {
                    failures.push_back(name + ": fixture missing");
                    continue;
                }
                const std::string expected = slurp(file);
                const std::string rendered =
                    render_prompt(build_context(golden, 0, 1, kind, mechanism), dialect);
                if (rendered != expected)
                    failures.push_back(name + ": rendered text differs from fixture");
            }
        }
    }
    return failures;
}

}  // namespace signet
