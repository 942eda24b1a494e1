#include "scandiag/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "scandiag/errors.hpp"
#include "scandiag/io.hpp"
#include "scandiag/pipeline.hpp"

namespace scandiag {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::string labels_csv;
    std::string fields_dir;
    std::optional<int> top_m;
};

class Emitter {
public:
    Emitter(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {}

    void operator()(const std::string& name, const std::string& content) const {
        if (opts_.out_dir.empty()) {
            out_ << content;
            return;
        }
        const fs::path path = fs::path(opts_.out_dir) / name;
        io::write_text_file(path, content);
        out_ << "wrote " << path.string() << '\n';
    }

    bool json() const { return opts_.format == "json"; }

private:
    const Options& opts_;
    std::ostream& out_;
};

PipelineConfig resolve_config(const Options& opts) {
    PipelineConfig cfg = opts.config_path.empty() ? PipelineConfig{} : load_config(opts.config_path);
    if (!opts.labels_csv.empty()) {
        cfg.labels_csv = opts.labels_csv;
        cfg.fields_dir.clear();
    }
    if (!opts.fields_dir.empty()) {
        cfg.fields_dir = opts.fields_dir;
        if (opts.labels_csv.empty()) cfg.labels_csv.clear();
    }
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.top_m) cfg.screen_top_m = *opts.top_m;
    cfg.validate();
    return cfg;
}

// Every strategy the source provides, without restricting to generated ids.
LabelSet load_all_labels(const PipelineConfig& cfg) {
    if (!cfg.fields_dir.empty() && cfg.labels_csv.empty()) {
        return load_labels(cfg, io::list_field_directory(cfg.fields_dir)).labels;
    }
    if (!cfg.labels_csv.empty() && cfg.fields_dir.empty()) return io::read_labels_csv(cfg.labels_csv);
    return load_labels(cfg, {}).labels;  // raises the source error
}

int cmd_strategies(const PipelineConfig& cfg, const Emitter& emit) {
    const auto orders = generate_all(cfg.layout, cfg.strategy);
    if (emit.json()) {
        json doc = json::array();
        for (const auto& o : orders) doc.push_back({{"strategy_id", o.strategy_id}, {"order", o.order}});
        emit("strategies.json", dump_deterministic(doc));
    } else {
        std::ostringstream s;
        io::write_strategies_csv(s, orders);
        emit("strategies.csv", s.str());
    }
    return kExitOk;
}

int cmd_proxy(const PipelineConfig& cfg, const Emitter& emit) {
    const auto orders = generate_all(cfg.layout, cfg.strategy);
    const ProxyMatrix m = proxy_matrix(orders, cfg.layout, cfg.proxy);
    if (emit.json()) {
        json values = json::object();
        for (std::size_t i = 0; i < m.rows.size(); ++i) {
            json row = json::object();
            for (const auto& [id, v] : m.rows[i]) row[id] = v;
            values[m.strategy_ids[i]] = row;
        }
        json norm = json::object();
        for (const auto& [id, r] : m.stats) norm[id] = {{"min", r.min}, {"max", r.max}};
        emit("proxy.json", dump_deterministic({{"values", values}, {"normalization", norm}}));
    } else {
        std::ostringstream matrix;
        std::ostringstream stats;
        io::write_proxy_csv(matrix, m);
        io::write_proxy_stats_csv(stats, m.stats);
        emit("proxy_matrix.csv", matrix.str());
        emit("proxy_normalization.csv", stats.str());
    }
    return kExitOk;
}

int cmd_reduce(const PipelineConfig& cfg, const Emitter& emit) {
    if (cfg.fields_dir.empty()) throw InvalidArgument("reduce needs --fields <dir>");
    const LabelSet labels = load_labels(cfg, io::list_field_directory(cfg.fields_dir)).labels;
    if (emit.json()) {
        json doc = json::array();
        for (const auto& e : labels.entries()) {
            doc.push_back({{"strategy_id", e.strategy_id},
                           {"mises_top5", e.labels.mises_top_k_mean},
                           {"u3_range", e.labels.u3_range},
                           {"peeq_frac", e.labels.peeq_fraction}});
        }
        emit("labels.json", dump_deterministic(doc));
    } else {
        std::ostringstream s;
        io::write_labels_csv(s, labels);
        emit("labels.csv", s.str());
    }
    return kExitOk;
}

int cmd_rank(const PipelineConfig& cfg, const Emitter& emit, std::ostream& err) {
    const LabelSet labels = load_all_labels(cfg);
    const RankingResult r = rank(labels, cfg.weights);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    const auto points = tradeoff_points(labels);
    auto dominated = [&](const std::string& id) {
        for (const auto& p : points) {
            if (p.strategy_id == id) return p.dominated;
        }
        return false;
    };
    if (emit.json()) {
        json doc = json::array();
        for (const auto& e : r.entries) {
            doc.push_back({{"rank", e.rank},
                           {"strategy_id", e.strategy_id},
                           {"normalized", e.normalized},
                           {"score", e.score},
                           {"pareto_dominated", dominated(e.strategy_id)}});
        }
        emit("ranking.json", dump_deterministic(doc));
    } else {
        std::ostringstream s;
        s << "rank,strategy_id,norm_mises,norm_u3,norm_peeq,score,pareto_dominated\n";
        for (const auto& e : r.entries) {
            s << e.rank << ',' << e.strategy_id << ',' << io::format_number(e.normalized[0]) << ','
              << io::format_number(e.normalized[1]) << ',' << io::format_number(e.normalized[2]) << ','
              << io::format_number(e.score) << ',' << (dominated(e.strategy_id) ? 1 : 0) << '\n';
        }
        emit("ranking.csv", s.str());
    }
    return kExitOk;
}

int cmd_sweep(const PipelineConfig& cfg, const Emitter& emit) {
    const LabelSet labels = load_all_labels(cfg);
    const RobustnessResult r = robustness_sweep(labels, simplex_grid(cfg.sweep_step));
    if (emit.json()) {
        json ranks = json::object();
        json ranges = json::object();
        for (std::size_t i = 0; i < r.strategy_ids.size(); ++i) {
            ranks[r.strategy_ids[i]] = r.ranks[i];
            ranges[r.strategy_ids[i]] = {r.rank_range[i].first, r.rank_range[i].second};
        }
        json grid = json::array();
        for (const auto& w : r.grid) grid.push_back({w.beta_sigma, w.beta_u, w.beta_p});
        emit("robustness.json", dump_deterministic({{"grid", grid}, {"ranks", ranks}, {"rank_range", ranges}}));
    } else {
        std::ostringstream s;
        s << "strategy_id,min_rank,max_rank";
        for (const auto& w : r.grid) {
            s << ",beta=" << io::format_number(w.beta_sigma) << '/' << io::format_number(w.beta_u) << '/'
              << io::format_number(w.beta_p);
        }
        s << '\n';
        for (std::size_t i = 0; i < r.strategy_ids.size(); ++i) {
            s << r.strategy_ids[i] << ',' << r.rank_range[i].first << ',' << r.rank_range[i].second;
            for (int rk : r.ranks[i]) s << ',' << rk;
            s << '\n';
        }
        emit("robustness.csv", s.str());
    }
    return kExitOk;
}

int cmd_align(const PipelineConfig& cfg, const Emitter& emit, std::ostream& err) {
    const auto orders = generate_all(cfg.layout, cfg.strategy);
    const ProxyMatrix m = proxy_matrix(orders, cfg.layout, cfg.proxy);
    const LoadedLabels labels = load_labels(cfg, m.strategy_ids);
    const AlignmentReport a = alignment_report(m, labels.labels, cfg.weights);
    for (const auto& w : labels.warnings) err << "warning: " << w << '\n';
    for (const auto& w : a.warnings) err << "warning: " << w << '\n';
    if (emit.json()) {
        RunReport shell;
        shell.alignment = a;
        emit("alignment.json", dump_deterministic(report_to_json(shell)["alignment"]));
        return kExitOk;
    }
    auto opt = [](const std::optional<double>& v) { return v ? io::format_number(*v) : std::string(); };
    std::ostringstream s;
    s << "# " << a.disclaimer << '\n';
    s << "metric_id,group,experimental,target,pearson,spearman,pairwise_agreement,pairwise_mismatch,degenerate,"
         "sign_warning\n";
    for (const auto& e : a.entries) {
        s << e.metric_id << ',' << to_string(e.group) << ',' << (e.experimental ? 1 : 0) << ',' << to_string(e.target)
          << ',' << opt(e.pearson) << ',' << opt(e.spearman) << ',' << io::format_number(e.agreement) << ','
          << io::format_number(e.mismatch) << ',' << (e.degenerate ? 1 : 0) << ',' << (e.sign_warning ? 1 : 0)
          << '\n';
    }
    emit("alignment.csv", s.str());
    return kExitOk;
}

int cmd_screen(const PipelineConfig& cfg, const Emitter& emit) {
    const auto orders = generate_all(cfg.layout, cfg.strategy);
    const ProxyMatrix m = proxy_matrix(orders, cfg.layout, cfg.proxy);
    const auto shortlist = screen(m, cfg.screen_weights, cfg.screen_top_m);
    if (emit.json()) {
        json doc = json::array();
        for (const auto& e : shortlist) {
            doc.push_back({{"position", e.position},
                           {"strategy_id", e.strategy_id},
                           {"j_proxy", e.score},
                           {"selected", e.selected}});
        }
        emit("shortlist.json", dump_deterministic(doc));
    } else {
        std::ostringstream s;
        s << "position,strategy_id,j_proxy,selected\n";
        for (const auto& e : shortlist) {
            s << e.position << ',' << e.strategy_id << ',' << io::format_number(e.score) << ','
              << (e.selected ? 1 : 0) << '\n';
        }
        emit("shortlist.csv", s.str());
    }
    return kExitOk;
}

int cmd_pipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
    const RunReport report = run_pipeline(cfg);
    for (const auto& w : report.labels.warnings) err << "warning: " << w << '\n';
    for (const auto& w : report.ranking.warnings) err << "warning: " << w << '\n';
    for (const auto& w : report.alignment.warnings) err << "warning: " << w << '\n';
    write_run_outputs(report, cfg.out_dir);
    out << "wrote report.json, tradeoff.svg, robustness.svg, agreement.svg to " << cfg.out_dir.string() << '\n';
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scan-order proxy and residual-label diagnostics", "scandiag"};
    app.set_version_flag("--version", kToolVersion);
    Options opts;
    app.add_option("--config", opts.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", opts.out_dir, "output directory (stdout when omitted, except pipeline)");
    app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.require_subcommand(1);

    auto add_label_flags = [&](CLI::App* sub) {
        sub->add_option("--labels", opts.labels_csv, "labels CSV (strategy_id,mises_top5,u3_range,peeq_frac)");
        sub->add_option("--fields", opts.fields_dir, "directory of <strategy_id>.csv field tables");
    };

    auto* strategies = app.add_subcommand("strategies", "write the ten generated scan orders");
    auto* proxy = app.add_subcommand("proxy", "write the proxy matrix and normalization ranges");
    auto* reduce = app.add_subcommand("reduce", "reduce field tables to labels");
    reduce->add_option("--fields", opts.fields_dir, "directory of <strategy_id>.csv field tables")->required();
    auto* rank_cmd = app.add_subcommand("rank", "composite ranking of a label set");
    add_label_flags(rank_cmd);
    auto* sweep = app.add_subcommand("sweep", "rank robustness over the weight simplex");
    add_label_flags(sweep);
    auto* align = app.add_subcommand("align", "proxy-label alignment statistics");
    add_label_flags(align);
    auto* pipeline = app.add_subcommand("pipeline", "full run: report.json plus SVG charts");
    add_label_flags(pipeline);
    auto* screen_cmd = app.add_subcommand("screen", "shortlist strategies by proxy score");
    screen_cmd->add_option("--top-m", opts.top_m, "number of strategies to select");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const PipelineConfig cfg = resolve_config(opts);
        const Emitter emit(opts, out);
        if (*strategies) return cmd_strategies(cfg, emit);
        if (*proxy) return cmd_proxy(cfg, emit);
        if (*reduce) return cmd_reduce(cfg, emit);
        if (*rank_cmd) return cmd_rank(cfg, emit, err);
        if (*sweep) return cmd_sweep(cfg, emit);
        if (*align) return cmd_align(cfg, emit, err);
        if (*pipeline) return cmd_pipeline(cfg, out, err);
        if (*screen_cmd) return cmd_screen(cfg, emit);
    } catch (const InputMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitMissingData;
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const InsufficientDomain& e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace scandiag
