#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef SCANDIAG_HAVE_BOOST_PTREE
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#endif

#include "fixture.hpp"
#include "scandiag/cli.hpp"
#include "scandiag/pipeline.hpp"

using namespace scandiag;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "scandiag");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string config_path() { return (testing::fixture_dir() / "lded32_config.json").string(); }
std::string labels_path() { return (testing::fixture_dir() / "lded32_table2.csv").string(); }

fs::path scratch_dir(const char* name) {
    const fs::path d = fs::temp_directory_path() / "scandiag_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

PipelineConfig fixture_config(const fs::path& out_dir) {
    PipelineConfig cfg = load_config(config_path());
    cfg.out_dir = out_dir;
    return cfg;
}

} // namespace

TEST_CASE("strategies subcommand row counts") {
    const auto r = cli({"strategies"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 1 + 320);

    const auto dir = scratch_dir("cli_n8");
    std::ofstream(dir / "c.json") << R"({"layout": {"track_count": 8}})";
    const auto small = cli({"--config", (dir / "c.json").string(), "strategies"});
    CHECK(small.code == 0);
    CHECK(count_lines(small.out) == 1 + 80);
}

TEST_CASE("non-coprime lag is a config error") {
    const auto dir = scratch_dir("cli_lag");
    std::ofstream(dir / "c.json") << R"({"strategy": {"lag": 16}})";
    const auto r = cli({"--config", (dir / "c.json").string(), "strategies"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("covers only") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"--format", "xml", "strategies"}).code == kExitUsage);
    CHECK(cli({"--config", "/nonexistent.json", "strategies"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("missing strategy labels exit 2 and name the id") {
    const auto dir = scratch_dir("cli_missing");
    std::ifstream in(labels_path());
    std::ofstream out(dir / "labels.csv");
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("smartscan_proxy", 0) != 0) out << line << '\n';
    }
    out.close();
    const auto r = cli({"--out", (dir / "out").string(), "pipeline", "--labels", (dir / "labels.csv").string()});
    CHECK(r.code == kExitMissingData);
    CHECK(r.err.find("smartscan_proxy") != std::string::npos);
}

TEST_CASE("malformed labels exit 3 with the line number") {
    const auto dir = scratch_dir("cli_malformed");
    std::ofstream(dir / "labels.csv") << "strategy_id,mises_top5,u3_range,peeq_frac\nraster_left_to_right,1,oops,3\n";
    const auto r = cli({"rank", "--labels", (dir / "labels.csv").string()});
    CHECK(r.code == kExitMalformed);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("screen subcommand") {
    const auto one = cli({"--config", config_path(), "screen", "--top-m", "1"});
    CHECK(one.code == 0);
    CHECK(one.out.find("1,raster_left_to_right,0,1") != std::string::npos);

    const auto all = cli({"screen", "--top-m", "10"});
    CHECK(all.code == 0);
    CHECK(all.out.find(",0\n") == std::string::npos);

    CHECK(cli({"screen", "--top-m", "0"}).code == kExitUsage);
    CHECK(cli({"screen", "--top-m", "11"}).code == kExitUsage);
}

TEST_CASE("rank, sweep, align and proxy subcommands run on the fixture") {
    for (const char* sub : {"rank", "sweep", "align", "proxy"}) {
        for (const char* fmt : {"csv", "json"}) {
            CAPTURE(sub);
            CAPTURE(fmt);
            const auto r = cli({"--config", config_path(), "--format", fmt, sub});
            CHECK(r.code == 0);
            CHECK_FALSE(r.out.empty());
        }
    }
    const auto r = cli({"--config", config_path(), "rank"});
    CHECK(r.out.find("1,center_out,") != std::string::npos);
}

TEST_CASE("constant-field directory: identical labels, constant ranks") {
    const auto dir = scratch_dir("cli_fields");
    const auto fields = dir / "fields";
    fs::create_directories(fields);
    for (StrategyKind k : kAllStrategies) {
        std::ofstream f(fields / (std::string(to_string(k)) + ".csv"));
        f << "node_id,mises,u3,peeq,in_scan_region,bc_dominated\n";
        for (int i = 0; i < 20; ++i) f << i << ",200,0.5,0.01,1,0\n";
    }
    const auto reduced = cli({"reduce", "--fields", fields.string()});
    CHECK(reduced.code == 0);
    CHECK(count_lines(reduced.out) == 11);

    const auto out = dir / "out";
    const auto r = cli({"--out", out.string(), "pipeline", "--fields", fields.string()});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(out / "report.json"));
    for (const auto& [id, range] : doc["robustness"]["rank_range"].items()) CHECK(range[0] == range[1]);
    for (const auto& e : doc["labels"]["entries"]) CHECK(e["mises_top5"] == 200.0);
    CHECK(doc["meta"]["input_sha256"].size() == 10);
}

TEST_CASE("report structure and self-consistency") {
    const auto out = scratch_dir("report");
    const RunReport report = run_pipeline(fixture_config(out));
    const auto text = dump_deterministic(report_to_json(report));
    CHECK(text.back() == '\n');
    const auto doc = nlohmann::json::parse(text);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"alignment", "config", "labels", "meta", "proxy", "ranking", "robustness",
                                           "strategies"});

    LabelSet embedded;
    for (const auto& e : doc["labels"]["entries"]) {
        embedded.add(e["strategy_id"].get<std::string>(),
                     LabelVector{e["mises_top5"].get<double>(), e["u3_range"].get<double>(),
                                 e["peeq_frac"].get<double>()});
    }
    const auto& w = doc["ranking"]["weights"];
    const auto recomputed = rank(embedded, WeightVector{w["beta_sigma"].get<double>(), w["beta_u"].get<double>(),
                                                        w["beta_p"].get<double>()});
    const auto& stated = doc["ranking"]["entries"];
    REQUIRE(stated.size() == recomputed.entries.size());
    for (std::size_t i = 0; i < stated.size(); ++i) {
        CHECK(stated[i]["strategy_id"] == recomputed.entries[i].strategy_id);
        CHECK(stated[i]["rank"] == recomputed.entries[i].rank);
        CHECK(std::isfinite(stated[i]["score"].get<double>()));
    }
    CHECK(doc["ranking"]["disclaimer"].get<std::string>().find("not comparable") != std::string::npos);
    CHECK(doc["robustness"]["grid"].size() == 66);
}

TEST_CASE("pipeline outputs are well-formed and deterministic") {
    const auto a = scratch_dir("det_a");
    const auto b = scratch_dir("det_b");
    REQUIRE(cli({"--config", config_path(), "--out", a.string(), "pipeline"}).code == 0);
    REQUIRE(cli({"--config", config_path(), "--out", b.string(), "pipeline"}).code == 0);
    for (const char* name : {"report.json", "tradeoff.svg", "robustness.svg", "agreement.svg"}) {
        CAPTURE(name);
        CHECK(slurp(a / name) == slurp(b / name));
    }
#ifdef SCANDIAG_HAVE_BOOST_PTREE
    for (const char* name : {"tradeoff.svg", "robustness.svg", "agreement.svg"}) {
        CAPTURE(name);
        boost::property_tree::ptree tree;
        std::ifstream in(a / name);
        CHECK_NOTHROW(boost::property_tree::read_xml(in, tree));
        std::size_t roots = 0;
        for (const auto& child : tree) roots += child.first != "<xmlcomment>";
        CHECK(roots == 1);
        CHECK(tree.count("svg") == 1);
    }
#endif
}
