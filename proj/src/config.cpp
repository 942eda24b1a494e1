#include "scandiag/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "scandiag/errors.hpp"

namespace scandiag {

namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view where) {
    if (!j.is_object()) throw InvalidArgument("config: '" + std::string(where) + "' must be an object");
}

void check_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    require_object(j, where);
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw InvalidArgument("config: unknown key '" + key + "' in '" + std::string(where) + "'");
    }
}

template <typename T>
void read(const json& j, std::string_view key, T& out, std::string_view where) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        if constexpr (std::is_same_v<T, int>) {
            if (!it->is_number_integer()) throw InvalidArgument("");
            out = it->template get<int>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) throw InvalidArgument("");
            out = it->template get<double>();
        } else {
            if (!it->is_string()) throw InvalidArgument("");
            out = it->template get<std::string>();
        }
    } catch (const std::exception&) {
        throw InvalidArgument("config: '" + std::string(where) + "." + std::string(key) + "' has the wrong type");
    }
}

void read_path(const json& j, std::string_view key, std::filesystem::path& out, const std::filesystem::path& base,
               std::string_view where) {
    std::string raw;
    if (!j.contains(key)) return;
    read(j, key, raw, where);
    if (raw.empty()) {
        out.clear();
        return;
    }
    std::filesystem::path p(raw);
    out = (p.is_relative() && !base.empty()) ? (base / p).lexically_normal() : p;
}

} // namespace

void PipelineConfig::validate() const {
    layout.validate();
    proxy.validate();
    reduction.validate();
    weights.validate();
    (void)resolve_lag(strategy, layout.track_count);
    if (strategy.window < 1 || strategy.window > layout.track_count) {
        throw InvalidArgument("strategy window outside 1..track_count");
    }
    if (!(strategy.decay > 0.0 && strategy.decay <= 1.0)) throw InvalidArgument("strategy decay must lie in (0, 1]");
    if (!(strategy.deposit_width > 0.0)) throw InvalidArgument("strategy deposit_width must be positive");
    (void)simplex_grid(sweep_step);
    for (const auto& [id, alpha] : screen_weights) {
        (void)metric_group(id);
        if (!std::isfinite(alpha)) throw InvalidArgument("screen weight for '" + id + "' is not finite");
    }
    if (screen_top_m < 1) throw InvalidArgument("screen top_m must be at least 1");
}

PipelineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    check_keys(doc, "<root>", {"layout", "strategy", "proxy", "reduction", "weights", "sweep_step", "screen", "paths"});

    if (auto it = doc.find("layout"); it != doc.end()) {
        check_keys(*it, "layout", {"track_count", "pitch"});
        read(*it, "track_count", cfg.layout.track_count, "layout");
        read(*it, "pitch", cfg.layout.pitch, "layout");
    }
    if (auto it = doc.find("strategy"); it != doc.end()) {
        check_keys(*it, "strategy", {"lag", "window", "decay", "deposit_width"});
        if (auto lag = it->find("lag"); lag != it->end() && !lag->is_null()) {
            int value = 0;
            read(*it, "lag", value, "strategy");
            cfg.strategy.lag = value;
        }
        read(*it, "window", cfg.strategy.window, "strategy");
        read(*it, "decay", cfg.strategy.decay, "strategy");
        read(*it, "deposit_width", cfg.strategy.deposit_width, "strategy");
    }
    if (auto it = doc.find("proxy"); it != doc.end()) {
        check_keys(*it, "proxy", {"window", "hot_decay", "hot_deposit_width", "memory_decay", "memory_deposit_width"});
        read(*it, "window", cfg.proxy.window, "proxy");
        read(*it, "hot_decay", cfg.proxy.hot_decay, "proxy");
        read(*it, "hot_deposit_width", cfg.proxy.hot_deposit_width, "proxy");
        read(*it, "memory_decay", cfg.proxy.memory_decay, "proxy");
        read(*it, "memory_deposit_width", cfg.proxy.memory_deposit_width, "proxy");
    }
    if (auto it = doc.find("reduction"); it != doc.end()) {
        check_keys(*it, "reduction", {"top_k", "peeq_threshold"});
        read(*it, "top_k", cfg.reduction.top_k, "reduction");
        read(*it, "peeq_threshold", cfg.reduction.peeq_threshold, "reduction");
    }
    if (auto it = doc.find("weights"); it != doc.end()) {
        check_keys(*it, "weights", {"beta_sigma", "beta_u", "beta_p"});
        read(*it, "beta_sigma", cfg.weights.beta_sigma, "weights");
        read(*it, "beta_u", cfg.weights.beta_u, "weights");
        read(*it, "beta_p", cfg.weights.beta_p, "weights");
    }
    read(doc, "sweep_step", cfg.sweep_step, "<root>");
    if (auto it = doc.find("screen"); it != doc.end()) {
        check_keys(*it, "screen", {"proxy_weights", "top_m"});
        read(*it, "top_m", cfg.screen_top_m, "screen");
        if (auto w = it->find("proxy_weights"); w != it->end()) {
            require_object(*w, "screen.proxy_weights");
            cfg.screen_weights.clear();
            for (const auto& [key, value] : w->items()) {
                if (!value.is_number()) throw InvalidArgument("config: screen weight '" + key + "' must be a number");
                cfg.screen_weights[key] = value.get<double>();
            }
        }
    }
    if (auto it = doc.find("paths"); it != doc.end()) {
        check_keys(*it, "paths", {"labels_csv", "fields_dir", "out_dir"});
        read_path(*it, "labels_csv", cfg.labels_csv, base_dir, "paths");
        read_path(*it, "fields_dir", cfg.fields_dir, base_dir, "paths");
        read_path(*it, "out_dir", cfg.out_dir, base_dir, "paths");
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config " + path.string() + ": " + e.what());
    }
    return config_from_json(doc, path.parent_path());
}

json config_to_json(const PipelineConfig& c) {
    json j = config_echo(c);
    j["paths"]["out_dir"] = c.out_dir.string();
    return j;
}

json config_echo(const PipelineConfig& c) {
    json j;
    j["layout"] = {{"track_count", c.layout.track_count}, {"pitch", c.layout.pitch}};
    j["strategy"] = {{"lag", c.strategy.lag ? json(*c.strategy.lag) : json(nullptr)},
                     {"window", c.strategy.window},
                     {"decay", c.strategy.decay},
                     {"deposit_width", c.strategy.deposit_width}};
    j["proxy"] = {{"window", c.proxy.window},
                  {"hot_decay", c.proxy.hot_decay},
                  {"hot_deposit_width", c.proxy.hot_deposit_width},
                  {"memory_decay", c.proxy.memory_decay},
                  {"memory_deposit_width", c.proxy.memory_deposit_width}};
    j["reduction"] = {{"top_k", c.reduction.top_k}, {"peeq_threshold", c.reduction.peeq_threshold}};
    j["weights"] = {{"beta_sigma", c.weights.beta_sigma}, {"beta_u", c.weights.beta_u}, {"beta_p", c.weights.beta_p}};
    j["sweep_step"] = c.sweep_step;
    json weights = json::object();
    for (const auto& [id, alpha] : c.screen_weights) weights[id] = alpha;
    j["screen"] = {{"proxy_weights", weights}, {"top_m", c.screen_top_m}};
    j["paths"] = {{"labels_csv", c.labels_csv.string()}, {"fields_dir", c.fields_dir.string()}};
    return j;
}

} // namespace scandiag
