#include <doctest.h>

#include <algorithm>

#include "fixture.hpp"
#include "scandiag/errors.hpp"
#include "scandiag/ranking.hpp"

using namespace scandiag;
using scandiag::testing::fixture_labels;

namespace {

LabelSet constant_set(int m) {
    LabelSet s;
    for (int i = 0; i < m; ++i) s.add("s" + std::to_string(i), LabelVector{100.0, 0.5, 99.0});
    return s;
}

} // namespace

TEST_CASE("LabelSet bookkeeping") {
    LabelSet s;
    s.add("a", LabelVector{1.0, 0.1, 50.0});
    CHECK_THROWS_AS(s.add("a", LabelVector{1.0, 0.1, 50.0}), InvalidArgument);
    CHECK_THROWS_AS(s.add("b", LabelVector{-1.0, 0.1, 50.0}), InvalidArgument);
    CHECK_THROWS_AS(s.add("b", LabelVector{1.0, 0.1, 101.0}), InvalidArgument);
    s.add("b", LabelVector{2.0, 0.2, 60.0});
    CHECK(s.ids() == std::vector<std::string>{"a", "b"});
    try {
        (void)s.select({"b", "smartscan_proxy"});
        FAIL("expected InputMismatch");
    } catch (const InputMismatch& e) {
        CHECK(e.ids() == std::vector<std::string>{"smartscan_proxy"});
    }
}

TEST_CASE("weight validation") {
    CHECK_NOTHROW(WeightVector{}.validate());
    CHECK_THROWS_AS((WeightVector{0.5, 0.5, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((WeightVector{1.2, -0.2, 0.0}.validate()), InvalidArgument);
}

TEST_CASE("normalize_labels on the fixture") {
    const auto n = normalize_labels(fixture_labels());
    CHECK(n.at("raster_left_to_right")[0] == 0.0);
    CHECK(n.at("edge_in")[0] == 1.0);
    CHECK(n.at("edge_in")[1] == 0.0);
    CHECK(n.at("raster_left_to_right")[1] == 1.0);
    for (const auto& t : n.values) {
        for (double v : t) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("degenerate metric normalizes to zero with a warning") {
    LabelSet s;
    s.add("a", LabelVector{200.0, 0.1, 10.0});
    s.add("b", LabelVector{200.0, 0.3, 20.0});
    const auto n = normalize_labels(s);
    CHECK(n.at("a")[0] == 0.0);
    CHECK(n.at("b")[0] == 0.0);
    CHECK_FALSE(n.warnings.empty());
    LabelSet one;
    one.add("a", LabelVector{1.0, 1.0, 1.0});
    CHECK_THROWS_AS(normalize_labels(one), InvalidArgument);
}

TEST_CASE("composite_score") {
    CHECK(composite_score({0.0, 0.0, 0.0}, WeightVector{}) == 0.0);
    CHECK(composite_score({1.0, 1.0, 1.0}, WeightVector{0.1, 0.7, 0.2}) == doctest::Approx(1.0));
    const auto n = normalize_labels(fixture_labels());
    const double expected = ((203.481 - 194.164) / 213.557 + (0.452 - 0.276) / 1.331) / 2.0;
    CHECK(composite_score(n.at("center_out"), WeightVector{0.5, 0.5, 0.0}) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(0.0879).epsilon(1e-3));
    CHECK_THROWS_AS(composite_score({0.0, 0.0, 0.0}, WeightVector{1.0, 1.0, 0.0}), InvalidArgument);
}

TEST_CASE("rank on the fixture") {
    const auto labels = fixture_labels();
    CHECK(rank(labels, WeightVector{1, 0, 0}).entries.front().strategy_id == "raster_left_to_right");
    CHECK(rank(labels, WeightVector{0, 1, 0}).entries.front().strategy_id == "edge_in");
    const auto r = rank(labels, WeightVector{0.5, 0.5, 0});
    CHECK(r.entries.front().strategy_id == "center_out");
    CHECK(r.rank_of("center_out") == 1);
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(r.entries[i].rank == static_cast<int>(i) + 1);
        if (i > 0) CHECK(r.entries[i - 1].score <= r.entries[i].score);
    }
}

TEST_CASE("corner weights sort by the raw column") {
    const auto labels = fixture_labels();
    for (int j = 0; j < 3; ++j) {
        WeightVector w{j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, j == 2 ? 1.0 : 0.0};
        auto entries = labels.entries();
        auto raw = [j](const LabelSet::Entry& e) {
            return j == 0 ? e.labels.mises_top_k_mean : j == 1 ? e.labels.u3_range : e.labels.peeq_fraction;
        };
        std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
            if (raw(a) != raw(b)) return raw(a) < raw(b);
            return a.strategy_id < b.strategy_id;
        });
        const auto r = rank(labels, w);
        for (std::size_t i = 0; i < entries.size(); ++i) CHECK(r.entries[i].strategy_id == entries[i].strategy_id);
    }
}

TEST_CASE("ties break by strategy id") {
    const auto r = rank(constant_set(4), WeightVector{});
    CHECK(r.entries[0].strategy_id == "s0");
    CHECK(r.entries[3].strategy_id == "s3");
}

TEST_CASE("simplex grid") {
    const auto g = simplex_grid(0.1);
    CHECK(g.size() == 66);
    for (const auto& w : g) CHECK_NOTHROW(w.validate());
    CHECK(simplex_grid(0.5).size() == 6);
    CHECK_THROWS_AS(simplex_grid(0.0), InvalidArgument);
    CHECK_THROWS_AS(simplex_grid(0.3), InvalidArgument);
}

TEST_CASE("robustness sweep on the fixture") {
    const auto labels = fixture_labels();
    const auto grid = simplex_grid(0.1);
    const auto sweep = robustness_sweep(labels, grid);
    const auto serial = robustness_sweep_serial(labels, grid);
    CHECK(sweep.ranks == serial.ranks);
    CHECK(sweep.rank_range == serial.rank_range);

    auto idx = [&](const std::string& id) {
        return static_cast<std::size_t>(std::find(sweep.strategy_ids.begin(), sweep.strategy_ids.end(), id) -
                                        sweep.strategy_ids.begin());
    };
    auto grid_idx = [&](double s, double u, double p) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (std::abs(grid[k].beta_sigma - s) < 1e-9 && std::abs(grid[k].beta_u - u) < 1e-9 &&
                std::abs(grid[k].beta_p - p) < 1e-9)
                return k;
        }
        FAIL("weighting not in grid");
        return grid.size();
    };
    CHECK(sweep.ranks[idx("raster_left_to_right")][grid_idx(1, 0, 0)] == 1);
    CHECK(sweep.ranks[idx("raster_left_to_right")][grid_idx(0, 1, 0)] >= 8);

    int worst = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k].beta_p < 1e-12) worst = std::max(worst, sweep.ranks[idx("center_out")][k]);
    }
    CHECK(worst <= 4);
}

TEST_CASE("constant set: zero-width rank ranges") {
    const auto sweep = robustness_sweep(constant_set(5), simplex_grid(0.1));
    for (const auto& [lo, hi] : sweep.rank_range) CHECK(lo == hi);
}

TEST_CASE("tradeoff points on the fixture") {
    const auto pts = tradeoff_points(fixture_labels());
    auto find = [&](const std::string& id) {
        return *std::find_if(pts.begin(), pts.end(), [&](const auto& p) { return p.strategy_id == id; });
    };
    CHECK_FALSE(find("raster_left_to_right").dominated);
    CHECK_FALSE(find("edge_in").dominated);
    CHECK(find("smartscan_proxy").dominated);
    CHECK_FALSE(find("center_out").dominated);
    for (const auto& p : pts) {
        bool dominated = false;
        for (const auto& q : pts) {
            if (&p == &q) continue;
            dominated |= q.mises <= p.mises && q.u3 <= p.u3 && (q.mises < p.mises || q.u3 < p.u3);
        }
        CHECK(dominated == p.dominated);
    }
}

TEST_CASE("worsening one metric never improves rank") {
    const auto labels = fixture_labels();
    for (const auto& w : simplex_grid(0.25)) {
        const int before = rank(labels, w).rank_of("center_out");
        LabelSet worse;
        for (const auto& e : labels.entries()) {
            auto l = e.labels;
            if (e.strategy_id == "center_out") l.u3_range += 0.3;
            worse.add(e.strategy_id, l);
        }
        CHECK(rank(worse, w).rank_of("center_out") >= before);
    }
}
