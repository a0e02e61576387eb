#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "signet/runner.hpp"

using namespace signet;

namespace {

struct RunOptions {
    std::vector<std::string> kinds{"relationship"};
    std::vector<std::string> mechanisms{"homophily"};
    std::vector<int> populations{3};
    int n = 10;
    int t_max = 10;
    std::uint64_t seed = 0;
    std::string init = "auto";
    std::string backend = "rule";
    std::string model;
    std::string dialect = "llama";
    std::string out = "runs";
    int workers = 4;
    double refusal_threshold = 0.02;

    std::string endpoint_url;
    double temperature = 0.0;
    int max_tokens = 512;
    int timeout_ms = 120000;
    int retries = 3;
    int backoff_ms = 250;
    int in_flight = 8;
    std::string auth_env;
};

struct LogOptions {
    std::string logs = "runs";
    std::string out;
    double refusal_threshold = 0.02;
};

RunManifest build_manifest(const RunOptions& opt) {
    RunManifest manifest;
    manifest.out_dir = opt.out;
    manifest.workers = opt.workers;
    manifest.refusal_threshold = opt.refusal_threshold;

    if (opt.backend == "llm" || !opt.endpoint_url.empty()) {
        EndpointConfig endpoint;
        if (!opt.endpoint_url.empty()) endpoint.base_url = opt.endpoint_url;
        endpoint.model = opt.model;
        endpoint.temperature = opt.temperature;
        endpoint.max_tokens = opt.max_tokens;
        endpoint.timeout_ms = opt.timeout_ms;
        endpoint.max_retries = opt.retries;
        endpoint.backoff_base_ms = opt.backoff_ms;
        endpoint.max_in_flight = opt.in_flight;
        endpoint.auth_env = opt.auth_env;
        manifest.endpoint = endpoint;
    }

    for (int m : opt.populations) {
        for (const std::string& kind : opt.kinds) {
            for (const std::string& mechanism : opt.mechanisms) {
                ExperimentConfig cfg;
                cfg.m = m;
                cfg.n = opt.n;
                cfg.t_max = opt.t_max;
                cfg.kind = kind_from_word(kind);
                cfg.mechanism = mechanism_from_word(mechanism);
                cfg.seed = opt.seed;
                cfg.backend = opt.backend;
                cfg.model_label = opt.model;
                cfg.dialect = dialect_from_word(opt.dialect);
                if (opt.init == "auto")
                    cfg.init_mode = m == 3 ? InitMode::ExhaustiveTriad : InitMode::RademacherRandom;
                else
                    cfg.init_mode = init_mode_from_word(opt.init);
                cfg.validate();
                manifest.sweep.push_back(cfg);
            }
        }
    }
    return manifest;
}

int cmd_run(const RunOptions& opt) {
    RunManifest manifest = build_manifest(opt);
    std::vector<RunOutcome> outcomes = run_sweep(manifest);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const RunOutcome& outcome = outcomes[i];
        std::cout << setting_key(manifest.sweep[i]).label() << "  " << outcome.experiment
                  << "  executed=" << outcome.executed << " skipped=" << outcome.skipped
                  << " aborted=" << outcome.aborted
                  << " refusal_simulations=" << outcome.refusal_simulations << "\n"
                  << "  log: " << outcome.log_file.string() << "\n";
    }
    std::cout << "reports: " << (manifest.out_dir / "reports").string() << "\n";
    return 0;
}

void print_bundle_summary(const ReportBundle& bundle, const std::vector<std::filesystem::path>& files) {
    std::cout << "simulations=" << bundle.simulations << " corrupt_lines=" << bundle.corrupt_lines
              << " dropped_simulations=" << bundle.dropped_simulations << "\n";
    for (const auto& file : files) std::cout << "  wrote " << file.string() << "\n";
}

int cmd_report(const LogOptions& opt) {
    ReportBundle bundle = report_from_logs(opt.logs, opt.refusal_threshold);
    std::filesystem::path out(opt.out.empty() ? opt.logs : opt.out);
    print_bundle_summary(bundle, write_reports(out, bundle));
    return 0;
}

int cmd_replay(const LogOptions& opt) {
    ReportBundle bundle = replay_from_logs(opt.logs, opt.refusal_threshold);
    std::filesystem::path out =
        opt.out.empty() ? std::filesystem::path(opt.logs) / "replay" : std::filesystem::path(opt.out);
    std::cout << "parser_version_mismatches=" << bundle.parser_version_mismatches
              << " parse_disagreements=" << bundle.parse_disagreements << "\n";
    print_bundle_summary(bundle, write_reports(out, bundle));
    return 0;
}

int cmd_validate_prompts(const std::string& fixtures) {
    std::vector<std::string> failures = validate_prompts(fixtures);
    if (failures.empty()) {
        std::cout << "all prompt fixtures match\n";
        return 0;
    }
    for (const std::string& failure : failures) std::cerr << failure << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulate and analyze signed interactions among language-model agents"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI file whose sections name subcommands and whose keys mirror their flags");

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "run a sweep of simulation settings");
    run->add_option("--kind", run_opt.kinds, "interaction kinds to sweep")
        ->check(CLI::IsMember({"relationship", "appraisal", "opinion"}))
        ->delimiter(',');
    run->add_option("--mechanism", run_opt.mechanisms, "update mechanisms to sweep")
        ->check(CLI::IsMember({"homophily", "influence"}))
        ->delimiter(',');
    run->add_option("-m,--m", run_opt.populations, "population sizes to sweep")->delimiter(',');
    run->add_option("-n,--n", run_opt.n, "simulations per initialization");
    run->add_option("-T,--iterations", run_opt.t_max, "synchronous update iterations");
    run->add_option("--seed", run_opt.seed, "master seed");
    run->add_option("--init", run_opt.init, "initialization mode; auto = exhaustive for m=3, else random")
        ->check(CLI::IsMember({"auto", "exhaustive", "random"}));
    run->add_option("--backend", run_opt.backend, "decision back-end")
        ->check(CLI::IsMember({"rule", "echo", "constant-positive", "constant-negative", "llm"}));
    run->add_option("--model", run_opt.model, "model label (and endpoint model name)");
    run->add_option("--dialect", run_opt.dialect, "prompt dialect")
        ->check(CLI::IsMember({"llama", "mistral"}));
    run->add_option("--out", run_opt.out, "output directory for logs and reports");
    run->add_option("--workers", run_opt.workers, "parallel simulations");
    run->add_option("--refusal-threshold", run_opt.refusal_threshold,
                    "refusing-simulation share above which a setting is left unreported");
    run->add_option("--endpoint", run_opt.endpoint_url, "chat-completions base URL");
    run->add_option("--temperature", run_opt.temperature, "sampling temperature");
    run->add_option("--max-tokens", run_opt.max_tokens, "completion token cap");
    run->add_option("--timeout-ms", run_opt.timeout_ms, "request timeout");
    run->add_option("--retries", run_opt.retries, "transport retry budget");
    run->add_option("--backoff-ms", run_opt.backoff_ms, "base retry backoff");
    run->add_option("--in-flight", run_opt.in_flight, "concurrent request cap");
    run->add_option("--auth-env", run_opt.auth_env,
                    "name of the environment variable holding the bearer token");

    LogOptions report_opt;
    CLI::App* report = app.add_subcommand("report", "rebuild reports from decision logs");
    report->add_option("--logs", report_opt.logs, "directory holding *.jsonl decision logs");
    report->add_option("--out", report_opt.out, "report output directory (default: the log directory)");
    report->add_option("--refusal-threshold", report_opt.refusal_threshold,
                       "refusing-simulation share above which a setting is left unreported");

    LogOptions replay_opt;
    CLI::App* replay = app.add_subcommand(
        "replay", "re-parse logged raw responses with the current parser and rebuild reports");
    replay->add_option("--logs", replay_opt.logs, "directory holding *.jsonl decision logs");
    replay->add_option("--out", replay_opt.out,
                       "report output directory (default: <logs>/replay)");
    replay->add_option("--refusal-threshold", replay_opt.refusal_threshold,
                       "refusing-simulation share above which a setting is left unreported");

    std::string fixtures = "tests/fixtures/prompts";
    CLI::App* validate = app.add_subcommand("validate-prompts",
                                            "check golden prompt files against the renderer");
    validate->add_option("--fixtures", fixtures, "directory of golden prompt files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) return cmd_run(run_opt);
        if (app.got_subcommand(report)) return cmd_report(report_opt);
        if (app.got_subcommand(replay)) return cmd_replay(replay_opt);
        if (app.got_subcommand(validate)) return cmd_validate_prompts(fixtures);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
