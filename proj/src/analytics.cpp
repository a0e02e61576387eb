#include "signet/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace signet {

namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return out;
}

std::string key_cells(const SettingKey& k) {
    return k.model + "," + kind_word(k.kind) + "," + mechanism_word(k.mechanism) + "," +
           std::to_string(k.m);
}

}  // namespace

std::string SettingKey::label() const {
    return sanitize(model) + "_" + kind_word(kind) + "_" + mechanism_word(mechanism) + "_m" +
           std::to_string(m);
}

SimulationSummary summarize(const Trajectory& traj) {
    return {traj.valid, traj.aborted, traj.final_state()};
}

std::optional<double> BalanceReport::frequency_pct() const {
    if (valid == 0) return std::nullopt;
    return 100.0 * balanced / valid;
}

double BalanceReport::inclusive_frequency_pct() const {
    return total == 0 ? 0.0 : 100.0 * balanced / total;
}

std::optional<char> BalanceReport::strictness() const {
    if (balanced == 0) return std::nullopt;
    return structurally_balanced == balanced ? 'S' : 'C';
}

bool BalanceReport::unreported(double refusal_threshold) const {
    return total == 0 || refusal_simulations > refusal_threshold * total;
}

BalanceReport balance_frequency(const std::vector<SimulationSummary>& sims) {
    BalanceReport r;
    for (const auto& s : sims) {
        ++r.total;
        if (s.aborted) {
            ++r.aborted;
            continue;
        }
        if (!s.valid) {
            ++r.refusal_simulations;
            continue;
        }
        ++r.valid;
        if (is_clustering_balanced(s.final_state)) {
            ++r.balanced;
            if (is_structurally_balanced(s.final_state)) ++r.structurally_balanced;
        }
    }
    return r;
}

void accumulate_triad_classes(const InteractionMatrix& final_state, TriadHistogram& bins) {
    if (!is_clustering_balanced(final_state)) return;
    for (const Triad& t : enumerate_triads(final_state.m())) {
        auto cls = classify_balanced_triad(final_state.at(t.i, t.j), final_state.at(t.j, t.k),
                                           final_state.at(t.k, t.i));
        // A clustering-balanced population cannot contain an unbalanced triad.
        ++bins[static_cast<std::size_t>(*cls)];
    }
}

TriadHistogram triad_class_histogram(const std::vector<InteractionMatrix>& finals) {
    TriadHistogram bins{};
    for (const auto& m : finals) accumulate_triad_classes(m, bins);
    return bins;
}

StabilityResult stability_initially_balanced(const std::vector<Trajectory>& trajectories) {
    StabilityResult r;
    for (const auto& traj : trajectories) {
        if (!is_clustering_balanced(traj.matrices.front()))
            throw std::invalid_argument("trajectory does not start from a balanced state");
        ++r.total;
        bool unchanged = true;
        for (const auto& m : traj.matrices)
            if (m != traj.matrices.front()) {
                unchanged = false;
                break;
            }
        if (unchanged) ++r.stable;
    }
    return r;
}

int last_half_window_start(int t_max) { return t_max - (t_max + 1) / 2; }

StabilityResult stability_last_half(const std::vector<Trajectory>& trajectories,
                                    int window_start) {
    StabilityResult r;
    for (const auto& traj : trajectories) {
        ++r.total;
        const int t_max = static_cast<int>(traj.matrices.size()) - 1;
        const int start = window_start >= 0 ? std::min(window_start, t_max)
                                            : last_half_window_start(t_max);
        bool same = true;
        for (int t = start + 1; t <= t_max; ++t)
            if (traj.matrices[static_cast<std::size_t>(t)] !=
                traj.matrices[static_cast<std::size_t>(start)]) {
                same = false;
                break;
            }
        if (same) ++r.stable;
    }
    return r;
}

std::vector<EdgeCycleCounts> time_series(const Trajectory& traj) {
    std::vector<EdgeCycleCounts> out;
    out.reserve(traj.matrices.size());
    for (const auto& m : traj.matrices) out.push_back(edge_and_cycle_counts(m));
    return out;
}

double KeywordReport::pct(const std::string& term) const {
    auto it = std::find(spec.terms.begin(), spec.terms.end(), term);
    if (it == spec.terms.end()) throw std::invalid_argument("term not in spec: " + term);
    if (responses == 0) return 0.0;
    return 100.0 * responses_with_term[static_cast<std::size_t>(it - spec.terms.begin())] /
           responses;
}

KeywordReport keyword_frequency(const std::vector<KeywordHits>& hits, const KeywordSpec& spec) {
    KeywordReport r{spec, std::vector<int>(spec.terms.size(), 0), 0};
    for (const auto& h : hits) {
        ++r.responses;
        for (std::size_t i = 0; i < spec.terms.size(); ++i)
            if (h.counts[i] > 0) ++r.responses_with_term[i];
    }
    return r;
}

std::string balance_csv(const std::map<SettingKey, BalanceReport>& reports,
                        double refusal_threshold) {
    std::string out =
        "model,kind,mechanism,m,total,valid,aborted,refusal_simulations,balanced,"
        "structurally_balanced,frequency_pct,inclusive_frequency_pct,strictness,reported\n";
    for (const auto& [key, r] : reports) {
        out += key_cells(key);
        out += "," + std::to_string(r.total) + "," + std::to_string(r.valid) + "," +
               std::to_string(r.aborted) + "," + std::to_string(r.refusal_simulations) + "," +
               std::to_string(r.balanced) + "," + std::to_string(r.structurally_balanced) + ",";
        if (auto f = r.frequency_pct()) out += fmt2(*f);
        out += "," + fmt2(r.inclusive_frequency_pct()) + ",";
        if (auto s = r.strictness()) out += *s;
        out += std::string(",") + (r.unreported(refusal_threshold) ? "no" : "yes") + "\n";
    }
    return out;
}

std::string histogram_csv(const std::map<SettingKey, TriadHistogram>& histograms) {
    std::string out = "model,kind,mechanism,m,triad_class,count\n";
    for (const auto& [key, bins] : histograms)
        for (int c = 0; c < kBalancedTriadClassCount; ++c)
            out += key_cells(key) + "," +
                   triad_class_label(static_cast<BalancedTriadClass>(c)) + "," +
                   std::to_string(bins[static_cast<std::size_t>(c)]) + "\n";
    return out;
}

std::string stability_csv(
    const std::map<SettingKey, std::pair<StabilityResult, StabilityResult>>& results) {
    std::string out = "model,kind,mechanism,m,measure,stable,total,pct\n";
    for (const auto& [key, pair] : results) {
        const auto& [from_start, last_half] = pair;
        out += key_cells(key) + ",from_balanced_start," + std::to_string(from_start.stable) + "," +
               std::to_string(from_start.total) + "," + fmt2(from_start.pct()) + "\n";
        out += key_cells(key) + ",last_half," + std::to_string(last_half.stable) + "," +
               std::to_string(last_half.total) + "," + fmt2(last_half.pct()) + "\n";
    }
    return out;
}

std::string keyword_csv(const std::map<SettingKey, KeywordReport>& reports) {
    std::string out = "model,kind,mechanism,m,term,responses_with_term,responses,pct\n";
    for (const auto& [key, r] : reports)
        for (std::size_t i = 0; i < r.spec.terms.size(); ++i)
            out += key_cells(key) + "," + r.spec.terms[i] + "," +
                   std::to_string(r.responses_with_term[i]) + "," + std::to_string(r.responses) +
                   "," + fmt2(r.pct(r.spec.terms[i])) + "\n";
    return out;
}

std::string timeseries_csv(const std::map<SettingKey, std::vector<SimSeries>>& series) {
    std::string out =
        "model,kind,mechanism,m,init_index,sim_index,t,positive_edges,negative_edges,"
        "positive_cycles\n";
    for (const auto& [key, sims] : series)
        for (const auto& sim : sims)
            for (std::size_t t = 0; t < sim.points.size(); ++t) {
                const auto& p = sim.points[t];
                out += key_cells(key) + "," + std::to_string(sim.init_index) + "," +
                       std::to_string(sim.sim_index) + "," + std::to_string(t) + "," +
                       std::to_string(p.positive_edges) + "," + std::to_string(p.negative_edges) +
                       "," + std::to_string(p.positive_cycles) + "\n";
            }
    return out;
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 360;
constexpr int kMargin = 48;

std::string svg_open(const std::string& title) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<text x=\"" +
           std::to_string(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           title + "</text>\n";
}

}  // namespace

std::string histogram_svg(const TriadHistogram& bins, const std::string& title) {
    const int max_count = std::max(1, *std::max_element(bins.begin(), bins.end()));
    const int plot_w = kWidth - 2 * kMargin;
    const int plot_h = kHeight - 2 * kMargin;
    const int slot = plot_w / kBalancedTriadClassCount;

    std::string out = svg_open(title);
    for (int c = 0; c < kBalancedTriadClassCount; ++c) {
        const int h = bins[static_cast<std::size_t>(c)] * plot_h / max_count;
        const int x = kMargin + c * slot + slot / 8;
        const int y = kHeight - kMargin - h;
        out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
               std::to_string(3 * slot / 4) + "\" height=\"" + std::to_string(h) +
               "\" fill=\"#4878a8\"/>\n";
        out += "<text x=\"" + std::to_string(x + 3 * slot / 8) + "\" y=\"" +
               std::to_string(kHeight - kMargin + 18) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">" +
               triad_class_label(static_cast<BalancedTriadClass>(c)) + "</text>\n";
        out += "<text x=\"" + std::to_string(x + 3 * slot / 8) + "\" y=\"" +
               std::to_string(y - 6) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               std::to_string(bins[static_cast<std::size_t>(c)]) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string timeseries_svg(const std::vector<EdgeCycleCounts>& points, const std::string& title) {
    int max_v = 1;
    for (const auto& p : points)
        max_v = std::max({max_v, p.positive_edges, p.negative_edges, p.positive_cycles});
    const int plot_w = kWidth - 2 * kMargin;
    const int plot_h = kHeight - 2 * kMargin;
    const int n = std::max<int>(2, static_cast<int>(points.size()));

    auto polyline = [&](const char* color, auto select) {
        std::string line = "<polyline fill=\"none\" stroke=\"";
        line += color;
        line += "\" stroke-width=\"2\" points=\"";
        for (std::size_t t = 0; t < points.size(); ++t) {
            const int x = kMargin + static_cast<int>(t) * plot_w / (n - 1);
            const int y = kHeight - kMargin - select(points[t]) * plot_h / max_v;
            line += std::to_string(x) + "," + std::to_string(y) + " ";
        }
        line += "\"/>\n";
        return line;
    };

    std::string out = svg_open(title);
    out += polyline("#4878a8", [](const EdgeCycleCounts& p) { return p.positive_edges; });
    out += polyline("#a84848", [](const EdgeCycleCounts& p) { return p.negative_edges; });
    out += polyline("#48a860", [](const EdgeCycleCounts& p) { return p.positive_cycles; });
    out += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kHeight - 12) +
           "\" font-family=\"sans-serif\" font-size=\"12\">blue: positive edges, red: negative "
           "edges, green: positive cycles</text>\n</svg>\n";
    return out;
}

}  // namespace signet
