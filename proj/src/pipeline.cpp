#include "scandiag/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "scandiag/errors.hpp"
#include "scandiag/field_reduce.hpp"
#include "scandiag/io.hpp"
#include "scandiag/svg.hpp"

namespace scandiag {

using nlohmann::json;

std::vector<ScreenEntry> screen(const ProxyMatrix& proxies, const ProxyWeights& weights, int top_m) {
    const auto m = static_cast<int>(proxies.rows.size());
    if (top_m < 1 || top_m > m) {
        throw InvalidArgument("top_m " + std::to_string(top_m) + " outside 1.." + std::to_string(m));
    }
    std::vector<ScreenEntry> out;
    out.reserve(proxies.rows.size());
    for (std::size_t i = 0; i < proxies.rows.size(); ++i) {
        out.push_back(ScreenEntry{0, proxies.strategy_ids[i], proxy_score(proxies.rows[i], weights, proxies.stats), false});
    }
    std::sort(out.begin(), out.end(), [](const ScreenEntry& a, const ScreenEntry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.strategy_id < b.strategy_id;
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].position = static_cast<int>(i) + 1;
        out[i].selected = static_cast<int>(i) < top_m;
    }
    return out;
}

LoadedLabels load_labels(const PipelineConfig& config, const std::vector<std::string>& strategy_ids) {
    const bool have_csv = !config.labels_csv.empty();
    const bool have_dir = !config.fields_dir.empty();
    if (have_csv == have_dir) {
        throw InvalidArgument(have_csv ? "give either a labels CSV or a field-table directory, not both"
                                       : "no label source: set a labels CSV or a field-table directory");
    }
    LoadedLabels out;
    if (have_csv) {
        out.source = "labels_csv";
        const LabelSet all = io::read_labels_csv(config.labels_csv);
        for (const auto& id : all.ids()) {
            if (std::find(strategy_ids.begin(), strategy_ids.end(), id) == strategy_ids.end()) {
                out.warnings.push_back("labels for unknown strategy '" + id + "' ignored");
            }
        }
        out.labels = all.select(strategy_ids);
        out.digests[config.labels_csv.filename().string()] = io::sha256_file(config.labels_csv);
    } else {
        out.source = "field_tables";
        const std::vector<NodeFieldTable> tables = io::read_field_directory(config.fields_dir, strategy_ids);
        const std::vector<LabelVector> labels = extract_labels_batch(tables, config.reduction);
        for (std::size_t i = 0; i < strategy_ids.size(); ++i) {
            out.labels.add(strategy_ids[i], labels[i]);
            out.digests[strategy_ids[i] + ".csv"] = io::sha256_file(config.fields_dir / (strategy_ids[i] + ".csv"));
        }
    }
    return out;
}

RunReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    RunReport r;
    r.config = config;
    r.strategies = generate_all(config.layout, config.strategy);
    r.proxies = proxy_matrix(r.strategies, config.layout, config.proxy);
    r.screening = screen(r.proxies, config.screen_weights,
                         std::min(config.screen_top_m, static_cast<int>(r.strategies.size())));
    r.labels = load_labels(config, r.proxies.strategy_ids);
    r.ranking = rank(r.labels.labels, config.weights);
    r.tradeoff = tradeoff_points(r.labels.labels);
    r.robustness = robustness_sweep(r.labels.labels, simplex_grid(config.sweep_step));
    r.alignment = alignment_report(r.proxies, r.labels.labels, config.weights);
    return r;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json weights_json(const WeightVector& w) {
    return {{"beta_sigma", w.beta_sigma}, {"beta_u", w.beta_u}, {"beta_p", w.beta_p}};
}

json alignment_json(const AlignmentReport& a) {
    json entries = json::array();
    for (const auto& e : a.entries) {
        entries.push_back({{"metric_id", e.metric_id},
                           {"group", std::string(to_string(e.group))},
                           {"experimental", e.experimental},
                           {"target", std::string(to_string(e.target))},
                           {"pearson", optional_number(e.pearson)},
                           {"spearman", optional_number(e.spearman)},
                           {"pairwise_agreement", e.agreement},
                           {"pairwise_mismatch", e.mismatch},
                           {"degenerate", e.degenerate},
                           {"sign_warning", e.sign_warning}});
    }
    json best = json::array();
    for (const auto& b : a.best) {
        best.push_back({{"target", std::string(to_string(b.target))},
                        {"metric_id", b.metric_id ? json(*b.metric_id) : json(nullptr)},
                        {"pearson", optional_number(b.pearson)},
                        {"spearman", optional_number(b.spearman)},
                        {"pairwise_agreement", b.agreement}});
    }
    return {{"strategy_ids", a.strategy_ids},
            {"weights", weights_json(a.weights)},
            {"correlations_reported", a.correlations_reported},
            {"entries", entries},
            {"best_proxy", best},
            {"warnings", a.warnings},
            {"disclaimer", a.disclaimer}};
}

void round_floats(json& j) {
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v == 0.0) v = 0.0;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        j = std::strtod(buf, nullptr);
    } else if (j.is_structured()) {
        for (auto& child : j) round_floats(child);
    }
}

} // namespace

json report_to_json(const RunReport& r) {
    json doc;
    doc["config"] = config_echo(r.config);

    json strategies = json::array();
    for (const auto& s : r.strategies) strategies.push_back({{"strategy_id", s.strategy_id}, {"order", s.order}});
    doc["strategies"] = strategies;

    json metrics = json::array();
    for (const auto& info : proxy_metric_catalog()) {
        metrics.push_back({{"id", std::string(info.id)},
                           {"group", std::string(to_string(info.group))},
                           {"experimental", info.experimental}});
    }
    json rows = json::object();
    for (std::size_t i = 0; i < r.proxies.rows.size(); ++i) {
        json row = json::object();
        for (const auto& [id, v] : r.proxies.rows[i]) row[id] = v;
        rows[r.proxies.strategy_ids[i]] = row;
    }
    json norm = json::object();
    for (const auto& [id, range] : r.proxies.stats) norm[id] = {{"min", range.min}, {"max", range.max}};
    json screening = json::array();
    for (const auto& s : r.screening) {
        screening.push_back({{"position", s.position},
                             {"strategy_id", s.strategy_id},
                             {"j_proxy", s.score},
                             {"selected", s.selected}});
    }
    doc["proxy"] = {{"metrics", metrics}, {"values", rows}, {"normalization", norm}, {"screening", screening}};

    json label_entries = json::array();
    for (const auto& e : r.labels.labels.entries()) {
        label_entries.push_back({{"strategy_id", e.strategy_id},
                                 {"mises_top5", e.labels.mises_top_k_mean},
                                 {"u3_range", e.labels.u3_range},
                                 {"peeq_frac", e.labels.peeq_fraction}});
    }
    doc["labels"] = {{"source", r.labels.source}, {"entries", label_entries}};

    json ranked = json::array();
    for (const auto& e : r.ranking.entries) {
        ranked.push_back({{"rank", e.rank},
                          {"strategy_id", e.strategy_id},
                          {"normalized", e.normalized},
                          {"score", e.score}});
    }
    json tradeoff = json::array();
    for (const auto& p : r.tradeoff) {
        tradeoff.push_back({{"strategy_id", p.strategy_id},
                            {"mises_top5", p.mises},
                            {"u3_range", p.u3},
                            {"dominated", p.dominated}});
    }
    doc["ranking"] = {{"weights", weights_json(r.ranking.weights)},
                      {"entries", ranked},
                      {"tradeoff", tradeoff},
                      {"warnings", r.ranking.warnings},
                      {"disclaimer", std::string(alignment_disclaimer())}};

    json grid = json::array();
    for (const auto& w : r.robustness.grid) grid.push_back({w.beta_sigma, w.beta_u, w.beta_p});
    json rank_rows = json::object();
    json ranges = json::object();
    for (std::size_t i = 0; i < r.robustness.strategy_ids.size(); ++i) {
        rank_rows[r.robustness.strategy_ids[i]] = r.robustness.ranks[i];
        ranges[r.robustness.strategy_ids[i]] = {r.robustness.rank_range[i].first, r.robustness.rank_range[i].second};
    }
    doc["robustness"] = {{"step", r.config.sweep_step}, {"grid", grid}, {"ranks", rank_rows}, {"rank_range", ranges}};

    doc["alignment"] = alignment_json(r.alignment);

    json digests = json::object();
    for (const auto& [name, sha] : r.labels.digests) digests[name] = sha;
    doc["meta"] = {{"tool", kToolName},
                   {"version", kToolVersion},
                   {"input_sha256", digests},
                   {"warnings", r.labels.warnings}};
    return doc;
}

std::string dump_deterministic(const json& doc) {
    json copy = doc;
    round_floats(copy);
    return copy.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

void write_run_outputs(const RunReport& report, const std::filesystem::path& out_dir) {
    io::write_text_file(out_dir / "report.json", dump_deterministic(report_to_json(report)));
    io::write_text_file(out_dir / "tradeoff.svg", svg::tradeoff_chart(report.tradeoff));
    io::write_text_file(out_dir / "robustness.svg", svg::robustness_heatmap(report.robustness));
    io::write_text_file(out_dir / "agreement.svg", svg::agreement_bars(report.alignment));
}

} // namespace scandiag
