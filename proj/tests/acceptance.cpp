// End-to-end acceptance checks. Each prints one PASS/FAIL line; the exit
// code is the number of failures. The last check talks to a served chat
// model when SIGNET_SMOKE_ENDPOINT is set and to an in-process stand-in
// otherwise.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "signet/hash.hpp"
#include "signet/runner.hpp"

using namespace signet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void run_check(int index, const std::string& what, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& error) {
        ok = false;
        detail = error.what();
    }
    std::printf("[%2d] %s  %s%s%s\n", index, ok ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void expect(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("signet_accept_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string fmt1(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f", v);
    return buffer;
}

// Brute-force balance verdicts, kept deliberately naive: check symmetry and
// neutrality directly and multiply the one triad cycle out by hand.
bool naive_structural(const InteractionMatrix& M) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (M.at(i, j) == Sign::Neutral) return false;
            if (M.at(i, j) != M.at(j, i)) return false;
        }
    return to_int(M.at(0, 1)) * to_int(M.at(1, 2)) * to_int(M.at(2, 0)) == 1;
}

bool naive_clustering(const InteractionMatrix& M) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (M.at(i, j) == Sign::Neutral) return false;
            if (M.at(i, j) != M.at(j, i)) return false;
        }
    const bool all_negative = M.at(0, 1) == Sign::Negative && M.at(1, 2) == Sign::Negative &&
                              M.at(0, 2) == Sign::Negative;
    return all_negative || to_int(M.at(0, 1)) * to_int(M.at(1, 2)) * to_int(M.at(2, 0)) == 1;
}

std::string check_balance_predicates() {
    int structural = 0;
    int clustering = 0;
    for (int code = 0; code < 729; ++code) {
        std::string text;
        for (int k = 0, x = code; k < 6; ++k, x /= 3) text += "-0+"[x % 3];
        const InteractionMatrix M = InteractionMatrix::parse(3, text);
        expect(is_structurally_balanced(M) == naive_structural(M),
               "structural verdict differs from brute force on " + text);
        expect(is_clustering_balanced(M) == naive_clustering(M),
               "clustering verdict differs from brute force on " + text);
        structural += is_structurally_balanced(M) ? 1 : 0;
        clustering += is_clustering_balanced(M) ? 1 : 0;
    }
    expect(structural == 4, "expected 4 structurally balanced states, saw " + std::to_string(structural));
    expect(clustering == 5, "expected 5 clustering-balanced states, saw " + std::to_string(clustering));
    return "predicates agree with brute force on all 729 states (4 structural, 5 clustering)";
}

std::string check_initialization_census() {
    const std::vector<InteractionMatrix> inits = enumerate_triad_initializations();
    expect(inits.size() == 64, "expected 64 initializations, saw " + std::to_string(inits.size()));
    std::set<std::string> seen;
    for (const InteractionMatrix& M : inits) {
        expect(!M.contains_neutral(), "initialization contains a neutral entry");
        seen.insert(M.to_string());
    }
    expect(seen.size() == 64, "initializations are not distinct");
    return "64 distinct all-signed starting matrices";
}

std::string check_triad_census() {
    expect(enumerate_triads(6).size() == 20, "expected 20 triads for six agents");
    expect(enumerate_triads(10).size() == 120, "expected 120 triads for ten agents");
    return "20 triads among six agents, 120 among ten";
}

std::string check_bookkeeping(const fs::path& dir) {
    RunManifest manifest;
    manifest.out_dir = dir;
    manifest.workers = 8;

    const auto started = std::chrono::steady_clock::now();
    for (InteractionKind kind :
         {InteractionKind::Relationship, InteractionKind::Appraisal, InteractionKind::Opinion}) {
        for (UpdateMechanism mechanism : {UpdateMechanism::Homophily, UpdateMechanism::Influence}) {
            ExperimentConfig cfg;
            cfg.kind = kind;
            cfg.mechanism = mechanism;
            cfg.seed = 2024;
            run_experiment(cfg, manifest);
        }
    }
    const double m3_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    for (int m : {6, 10}) {
        ExperimentConfig cfg;
        cfg.m = m;
        cfg.init_mode = InitMode::RademacherRandom;
        cfg.seed = 2024;
        run_experiment(cfg, manifest);
    }

    const ReportBundle bundle = report_from_logs(dir, 0.02);
    for (const char* kind : {"relationship", "appraisal", "opinion"})
        for (const char* mechanism : {"homophily", "influence"}) {
            const std::string row =
                "rule," + std::string(kind) + "," + mechanism + ",3,640,640,38400,38400,yes\n";
            expect(bundle.counts.find(row) != std::string::npos, "missing counts row: " + row);
        }
    expect(bundle.counts.find("rule,relationship,homophily,6,10,10,3000,3000,yes\n") !=
               std::string::npos,
           "six-agent setting did not produce 3000 decisions");
    expect(bundle.counts.find("rule,relationship,homophily,10,10,10,9000,9000,yes\n") !=
               std::string::npos,
           "ten-agent setting did not produce 9000 decisions");
    expect(m3_seconds < 120.0, "three-agent sweep took " + fmt1(m3_seconds) + " s");
    return "38400 decisions in each of six m=3 settings (" + fmt1(m3_seconds) +
           " s), 3000 at m=6, 9000 at m=10";
}

std::string check_prompt_goldens() {
    const std::vector<std::string> failures_ = validate_prompts(fs::path(FIXTURES_DIR) / "prompts");
    expect(failures_.empty(), failures_.empty() ? "" : failures_.front());
    return "all twelve golden prompt files match the renderer";
}

std::string check_transcripts() {
    std::ifstream in(fs::path(FIXTURES_DIR) / "transcripts" / "recorded_responses.jsonl");
    expect(in.good(), "transcript corpus missing");
    const KeywordSpec spec = KeywordSpec::standard();
    std::string line;
    int parsed_count = 0;
    int detached_cognitive_70b = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json record = nlohmann::json::parse(line);
        const std::string model = record.at("model");
        const PromptDialect dialect = model.rfind("mistral", 0) == 0 ? PromptDialect::MistralStyle
                                                                     : PromptDialect::LlamaStyle;
        const ParsedAnswer answer =
            extract_sign(record.at("raw"), kind_from_word(record.at("kind")), dialect);
        expect(parsed_answer_word(answer) == record.at("expect").get<std::string>(),
               "transcript " + record.at("id").get<std::string>() + " parsed as " +
                   parsed_answer_word(answer));
        const KeywordHits hits = scan_keywords(record.at("raw"), spec);
        for (const auto& term : record.at("keywords"))
            expect(hits.count(spec, term.get<std::string>()) > 0,
                   "transcript " + record.at("id").get<std::string>() + " lost keyword " +
                       term.get<std::string>());
        if (model == "llama-3-70B-instruct" && hits.count(spec, "cognitive") > 0 &&
            hits.count(spec, "dissonance") == 0)
            ++detached_cognitive_70b;
        ++parsed_count;
    }
    expect(parsed_count == 20, "expected 20 transcripts, saw " + std::to_string(parsed_count));
    expect(detached_cognitive_70b == 0,
           "70B corpus has 'cognitive' detached from 'dissonance'");
    return "all 20 transcripts parse to their recorded answers; no detached 'cognitive' in the 70B set";
}

std::string check_one_step_symmetry() {
    RuleAgent agent;
    int symmetric = 0;
    for (const InteractionMatrix& init : enumerate_triad_initializations()) {
        const StepResult step = synchronous_step(init, agent, InteractionKind::Relationship,
                                                 UpdateMechanism::Homophily, 1);
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ok = ok && step.next.at(i, j) == step.next.at(j, i);
        symmetric += ok ? 1 : 0;
    }
    expect(symmetric == 64, "only " + std::to_string(symmetric) + "/64 one-step updates symmetric");
    return "64/64 one-step homophily updates are symmetric";
}

std::string check_determinism_and_replay(const fs::path& a, const fs::path& b) {
    ExperimentConfig cfg;
    cfg.kind = InteractionKind::Appraisal;
    cfg.mechanism = UpdateMechanism::Influence;
    cfg.n = 1;
    cfg.seed = 7;
    RunManifest manifest;
    manifest.out_dir = a;
    manifest.workers = 4;
    run_experiment(cfg, manifest);
    manifest.out_dir = b;
    manifest.workers = 1;
    run_experiment(cfg, manifest);
    expect(slurp(log_path(a, cfg)) == slurp(log_path(b, cfg)),
           "logs differ between identically seeded runs");

    const ReportBundle reported = report_from_logs(a, 0.02);
    const ReportBundle replayed = replay_from_logs(a, 0.02);
    expect(replayed.parser_version_mismatches == 0, "parser version drifted");
    expect(replayed.parse_disagreements == 0, "replay re-parsed an answer differently");
    expect(reported.balance == replayed.balance && reported.histogram == replayed.histogram &&
               reported.stability == replayed.stability && reported.keywords == replayed.keywords &&
               reported.timeseries == replayed.timeseries && reported.counts == replayed.counts &&
               reported.charts == replayed.charts,
           "replayed reports differ from online reports");
    return "log bytes identical across reruns; replayed reports byte-identical";
}

std::string check_planted_change_points() {
    int agreements = 0;
    for (int case_index = 0; case_index < 1000; ++case_index) {
        std::mt19937_64 rng(derive_seed(0xacce9700ULL, 9, static_cast<std::uint64_t>(case_index)));
        const int m = 3 + static_cast<int>(rng() % 4);
        const int groups = 1 + static_cast<int>(rng() % 3);
        std::vector<int> group(m);
        for (int& g : group) g = static_cast<int>(rng() % groups);
        const InteractionMatrix init = InteractionMatrix::build(m, [&](int r, int c) {
            return group[r] == group[c] ? Sign::Positive : Sign::Negative;
        });

        const int flip_i = static_cast<int>(rng() % m);
        const int flip_j = (flip_i + 1 + static_cast<int>(rng() % (m - 1))) % m;
        const InteractionMatrix flipped = InteractionMatrix::build(m, [&](int r, int c) {
            const Sign s = init.at(r, c);
            if (r == flip_i && c == flip_j)
                return s == Sign::Positive ? Sign::Negative : Sign::Positive;
            return s;
        });

        const int t_max = 10;
        const int scenario = static_cast<int>(rng() % 3);
        const int change_at =
            scenario == 2 ? 1 + static_cast<int>(rng() % 9) : 1 + static_cast<int>(rng() % 10);

        Trajectory traj;
        traj.kind = InteractionKind::Relationship;
        traj.mechanism = UpdateMechanism::Homophily;
        traj.matrices.assign(t_max + 1, init);
        if (scenario == 1)
            for (int t = change_at; t <= t_max; ++t) traj.matrices[t] = flipped;
        if (scenario == 2) traj.matrices[change_at] = flipped;

        const bool expect_unchanged = scenario == 0;
        const bool expect_late =
            scenario == 0 || (scenario == 2 ? change_at < 5 : change_at <= 5);
        const bool got_unchanged = stability_initially_balanced({traj}).stable == 1;
        const bool got_late = stability_last_half({traj}).stable == 1;
        if (got_unchanged == expect_unchanged && got_late == expect_late) ++agreements;
    }
    expect(agreements == 1000,
           "recovered " + std::to_string(agreements) + "/1000 planted labels");
    return "1000/1000 planted change-point labels recovered";
}

std::string check_endpoint_smoke(const fs::path& dir) {
    ExperimentConfig cfg;
    cfg.kind = InteractionKind::Appraisal;
    cfg.mechanism = UpdateMechanism::Homophily;
    cfg.init_mode = InitMode::RademacherRandom;
    cfg.n = 10;
    cfg.seed = 99;
    cfg.backend = "llm";

    RunManifest manifest;
    manifest.out_dir = dir;
    manifest.workers = 4;
    EndpointConfig endpoint;
    std::string flavor;

    const char* live = std::getenv("SIGNET_SMOKE_ENDPOINT");
    httplib::Server server;
    std::thread serving;
    if (live != nullptr && *live != '\0') {
        endpoint.base_url = live;
        if (const char* model = std::getenv("SIGNET_SMOKE_MODEL")) endpoint.model = model;
        if (const char* auth = std::getenv("SIGNET_SMOKE_AUTH_ENV")) endpoint.auth_env = auth;
        if (const char* dialect = std::getenv("SIGNET_SMOKE_DIALECT"))
            cfg.dialect = dialect_from_word(dialect);
        cfg.model_label = endpoint.model.empty() ? "served-model" : endpoint.model;
        flavor = "live endpoint " + endpoint.base_url;
    } else {
        server.Post("/v1/chat/completions", [](const httplib::Request&, httplib::Response& res) {
            nlohmann::json body{
                {"choices", {{{"message", {{"role", "assistant"}, {"content", "Positive."}}}}}}};
            res.set_content(body.dump(), "application/json");
        });
        const int port = server.bind_to_any_port("127.0.0.1");
        serving = std::thread([&server] { server.listen_after_bind(); });
        server.wait_until_ready();
        endpoint.base_url = "http://127.0.0.1:" + std::to_string(port);
        cfg.model_label = "smoke-model";
        flavor = "in-process endpoint";
    }
    manifest.endpoint = endpoint;

    RunOutcome outcome;
    std::string verdict;
    try {
        outcome = run_experiment(cfg, manifest);
        const ReportBundle bundle = report_from_logs(dir, 0.02);
        expect(outcome.executed == 10, "expected 10 simulations");
        expect(outcome.aborted == 0, std::to_string(outcome.aborted) + "/10 simulations aborted");
        const std::string row_prefix = cfg.model_label + ",appraisal,homophily,3,10,";
        expect(bundle.balance.find(row_prefix) != std::string::npos,
               "report is missing the smoke setting row");
        expect(bundle.counts.find(",yes\n") != std::string::npos, "decision counts inconsistent");
        verdict = "10/10 simulations complete, refusal share " +
                  fmt1(100.0 * outcome.refusal_simulations / 10.0) + "% (" + flavor + ")";
    } catch (...) {
        if (serving.joinable()) {
            server.stop();
            serving.join();
        }
        throw;
    }
    if (serving.joinable()) {
        server.stop();
        serving.join();
    }
    return verdict;
}

}  // namespace

int main() {
    TempDir sweep_dir("sweep");
    TempDir det_a("det_a");
    TempDir det_b("det_b");
    TempDir smoke_dir("smoke");

    run_check(1, "balance predicate census", check_balance_predicates);
    run_check(2, "initialization census", check_initialization_census);
    run_check(3, "triad census", check_triad_census);
    run_check(4, "decision bookkeeping on real runs",
              [&] { return check_bookkeeping(sweep_dir.path); });
    run_check(5, "golden prompt files", check_prompt_goldens);
    run_check(6, "recorded transcript corpus", check_transcripts);
    run_check(7, "one-step symmetry of the rule agent", check_one_step_symmetry);
    run_check(8, "determinism and replay",
              [&] { return check_determinism_and_replay(det_a.path, det_b.path); });
    run_check(9, "stability measures on planted change-points", check_planted_change_points);
    run_check(10, "chat endpoint smoke run", [&] { return check_endpoint_smoke(smoke_dir.path); });

    std::printf("%d/10 checks passed\n", 10 - failures);
    return failures;
}
