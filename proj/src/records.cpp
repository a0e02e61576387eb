#include "signet/records.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "signet/hash.hpp"
#include "signet/prompt.hpp"

namespace signet {

namespace {

using nlohmann::json;

json keywords_to_json(const KeywordHits& hits) {
    const KeywordSpec spec = KeywordSpec::standard();
    json out = json::object();
    for (std::size_t i = 0; i < spec.terms.size() && i < hits.counts.size(); ++i)
        if (hits.counts[i] > 0) out[spec.terms[i]] = hits.counts[i];
    return out;
}

KeywordHits keywords_from_json(const json& j) {
    const KeywordSpec spec = KeywordSpec::standard();
    KeywordHits hits{std::vector<int>(spec.terms.size(), 0)};
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        auto it = j.find(spec.terms[i]);
        if (it != j.end()) hits.counts[i] = it->get<int>();
    }
    return hits;
}

std::string sign_token(Sign s) { return std::string(1, sign_char(s)); }

Sign sign_from_token(const std::string& s) {
    if (s.size() != 1) throw std::invalid_argument("bad sign token: " + s);
    return sign_from_char(s[0]);
}

std::uint64_t seed_from_hex(const std::string& s) {
    std::size_t used = 0;
    std::uint64_t value = std::stoull(s, &used, 16);
    if (used != s.size()) throw std::invalid_argument("bad seed: " + s);
    return value;
}

}  // namespace

std::string to_log_line(const SimStartRecord& r) {
    json j;
    j["type"] = "sim_start";
    j["experiment"] = r.experiment;
    j["model"] = r.model;
    j["kind"] = kind_word(r.kind);
    j["mechanism"] = mechanism_word(r.mechanism);
    j["dialect"] = dialect_word(r.dialect);
    j["m"] = r.m;
    j["init_index"] = r.init_index;
    j["sim_index"] = r.sim_index;
    j["seed"] = hex64(r.seed);
    j["init"] = r.init;
    j["t_max"] = r.t_max;
    j["parser_version"] = r.parser_version;
    return j.dump();
}

std::string to_log_line(const DecisionRecord& r) {
    json j;
    j["type"] = "decision";
    j["experiment"] = r.experiment;
    j["init_index"] = r.init_index;
    j["sim_index"] = r.sim_index;
    j["t"] = r.t;
    j["focal"] = r.focal;
    j["target"] = r.target;
    j["prompt_hash"] = r.prompt_hash;
    j["raw"] = r.raw;
    j["parsed"] = parsed_answer_word(r.parsed);
    j["sign"] = sign_token(r.sign);
    j["refusal"] = r.refusal;
    j["keywords"] = keywords_to_json(r.keywords);
    j["latency_ms"] = r.latency_ms;
    return j.dump();
}

std::string to_log_line(const SimEndRecord& r) {
    json j;
    j["type"] = "sim_end";
    j["experiment"] = r.experiment;
    j["init_index"] = r.init_index;
    j["sim_index"] = r.sim_index;
    j["valid"] = r.valid;
    j["aborted"] = r.aborted;
    j["final"] = r.final_state;
    j["refusals"] = r.refusals;
    return j.dump();
}

LogRecord parse_log_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("unparseable log line: ") + e.what());
    }
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "sim_start") {
            SimStartRecord r;
            r.experiment = j.at("experiment").get<std::string>();
            r.model = j.at("model").get<std::string>();
            r.kind = kind_from_word(j.at("kind").get<std::string>());
            r.mechanism = mechanism_from_word(j.at("mechanism").get<std::string>());
            r.dialect = dialect_from_word(j.at("dialect").get<std::string>());
            r.m = j.at("m").get<int>();
            r.init_index = j.at("init_index").get<int>();
            r.sim_index = j.at("sim_index").get<int>();
            r.seed = seed_from_hex(j.at("seed").get<std::string>());
            r.init = j.at("init").get<std::string>();
            r.t_max = j.at("t_max").get<int>();
            r.parser_version = j.at("parser_version").get<int>();
            InteractionMatrix::parse(r.m, r.init);
            return r;
        }
        if (type == "decision") {
            DecisionRecord r;
            r.experiment = j.at("experiment").get<std::string>();
            r.init_index = j.at("init_index").get<int>();
            r.sim_index = j.at("sim_index").get<int>();
            r.t = j.at("t").get<int>();
            r.focal = j.at("focal").get<int>();
            r.target = j.at("target").get<int>();
            r.prompt_hash = j.at("prompt_hash").get<std::string>();
            r.raw = j.at("raw").get<std::string>();
            r.parsed = parsed_answer_from_word(j.at("parsed").get<std::string>());
            r.sign = sign_from_token(j.at("sign").get<std::string>());
            r.refusal = j.at("refusal").get<bool>();
            r.keywords = keywords_from_json(j.at("keywords"));
            r.latency_ms = j.at("latency_ms").get<std::int64_t>();
            return r;
        }
        if (type == "sim_end") {
            SimEndRecord r;
            r.experiment = j.at("experiment").get<std::string>();
            r.init_index = j.at("init_index").get<int>();
            r.sim_index = j.at("sim_index").get<int>();
            r.valid = j.at("valid").get<bool>();
            r.aborted = j.at("aborted").get<bool>();
            r.final_state = j.at("final").get<std::string>();
            r.refusals = j.at("refusals").get<int>();
            return r;
        }
        throw std::invalid_argument("unknown record type: " + type);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed record: ") + e.what());
    }
}

LogContents read_log(std::istream& in) {
    LogContents out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            LogRecord record = parse_log_line(line);
            std::visit(
                [&](auto&& r) {
                    using T = std::decay_t<decltype(r)>;
                    if constexpr (std::is_same_v<T, SimStartRecord>)
                        out.starts.push_back(std::move(r));
                    else if constexpr (std::is_same_v<T, DecisionRecord>)
                        out.decisions.push_back(std::move(r));
                    else
                        out.ends.push_back(std::move(r));
                },
                std::move(record));
        } catch (const std::invalid_argument&) {
            ++out.corrupt_lines;
        }
    }
    return out;
}

std::set<SimKey> completed_simulations(const LogContents& log) {
    std::set<SimKey> done;
    for (const auto& e : log.ends) done.insert(sim_key(e));
    return done;
}

std::map<std::tuple<int, int, int>, std::string> scripted_lines(
    const std::vector<DecisionRecord>& decisions) {
    std::map<std::tuple<int, int, int>, std::string> lines;
    for (const auto& d : decisions) {
        auto [it, inserted] = lines.emplace(std::make_tuple(d.t, d.focal, d.target), d.raw);
        if (!inserted)
            throw std::invalid_argument("duplicate decision at t=" + std::to_string(d.t));
    }
    return lines;
}

SimStartRecord make_sim_start(const std::string& experiment, const ExperimentConfig& cfg,
                              int init_index, int sim_index, std::uint64_t seed,
                              const InteractionMatrix& init) {
    SimStartRecord r;
    r.experiment = experiment;
    r.model = cfg.model_label.empty() ? cfg.backend : cfg.model_label;
    r.kind = cfg.kind;
    r.mechanism = cfg.mechanism;
    r.dialect = cfg.dialect;
    r.m = cfg.m;
    r.init_index = init_index;
    r.sim_index = sim_index;
    r.seed = seed;
    r.init = init.to_string();
    r.t_max = cfg.t_max;
    r.parser_version = kParserVersion;
    return r;
}

std::vector<DecisionRecord> make_decision_records(const std::string& experiment,
                                                  const ExperimentConfig& cfg, int init_index,
                                                  int sim_index, const Trajectory& traj,
                                                  const KeywordSpec& spec) {
    std::vector<DecisionRecord> out;
    out.reserve(traj.decisions.size());
    for (const auto& d : traj.decisions) {
        const InteractionMatrix& before = traj.matrices.at(static_cast<std::size_t>(d.t) - 1);
        UpdateContext ctx = build_context(before, d.focal, d.target, cfg.kind, cfg.mechanism);
        DecisionRecord r;
        r.experiment = experiment;
        r.init_index = init_index;
        r.sim_index = sim_index;
        r.t = d.t;
        r.focal = d.focal;
        r.target = d.target;
        r.prompt_hash = hex64(fnv1a64(render_prompt(ctx, cfg.dialect)));
        r.raw = d.decision.justification;
        r.parsed = d.decision.parsed;
        r.sign = d.applied;
        r.refusal = d.refused;
        r.keywords = scan_keywords(d.decision.justification, spec);
        r.latency_ms = d.decision.latency.count();
        out.push_back(std::move(r));
    }
    return out;
}

SimEndRecord make_sim_end(const std::string& experiment, int init_index, int sim_index,
                          const Trajectory& traj) {
    SimEndRecord r;
    r.experiment = experiment;
    r.init_index = init_index;
    r.sim_index = sim_index;
    r.valid = traj.valid;
    r.aborted = traj.aborted;
    r.final_state = traj.final_state().to_string();
    r.refusals = traj.refusal_count;
    return r;
}

Trajectory reconstruct_trajectory(const SimStartRecord& start,
                                  std::vector<DecisionRecord> decisions,
                                  const SimEndRecord* end) {
    std::sort(decisions.begin(), decisions.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.focal, a.target) < std::tie(b.t, b.focal, b.target);
    });
    for (std::size_t i = 1; i < decisions.size(); ++i)
        if (std::tie(decisions[i - 1].t, decisions[i - 1].focal, decisions[i - 1].target) ==
            std::tie(decisions[i].t, decisions[i].focal, decisions[i].target))
            throw std::invalid_argument("duplicate decision record");

    Trajectory traj;
    traj.kind = start.kind;
    traj.mechanism = start.mechanism;
    traj.matrices.push_back(InteractionMatrix::parse(start.m, start.init));

    const std::size_t per_step = static_cast<std::size_t>(start.m) * (start.m - 1);
    if (decisions.size() % per_step != 0)
        throw std::invalid_argument("decision records do not form whole steps");

    for (std::size_t base = 0; base < decisions.size(); base += per_step) {
        const int t = decisions[base].t;
        if (t != static_cast<int>(base / per_step) + 1)
            throw std::invalid_argument("gap in decision steps at t=" + std::to_string(t));
        std::map<std::pair<int, int>, Sign> applied;
        for (std::size_t i = base; i < base + per_step; ++i) {
            const auto& d = decisions[i];
            if (d.t != t) throw std::invalid_argument("partial decision step");
            applied[{d.focal, d.target}] = d.sign;
        }
        if (applied.size() != per_step)
            throw std::invalid_argument("incomplete pair coverage in step");
        traj.matrices.push_back(InteractionMatrix::build(
            start.m, [&](int i, int j) { return applied.at({i, j}); }));
    }

    for (auto& d : decisions) {
        StepDecision sd;
        sd.t = d.t;
        sd.focal = d.focal;
        sd.target = d.target;
        sd.decision = AgentDecision{d.parsed, d.raw, std::chrono::milliseconds(d.latency_ms)};
        sd.applied = d.sign;
        sd.refused = d.refusal;
        if (d.refusal) ++traj.refusal_count;
        traj.decisions.push_back(std::move(sd));
    }
    traj.valid = traj.refusal_count == 0;
    traj.aborted = static_cast<int>(traj.matrices.size()) - 1 < start.t_max;

    if (end != nullptr) {
        traj.valid = end->valid;
        traj.aborted = end->aborted;
        if (end->refusals != traj.refusal_count)
            throw std::invalid_argument("refusal tally disagrees with decision records");
        if (traj.final_state().to_string() != end->final_state)
            throw std::invalid_argument("reconstructed final state disagrees with closing record");
    }
    return traj;
}

}  // namespace signet
