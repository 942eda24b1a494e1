#include "scandiag/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace scandiag::svg {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

void open_svg(std::ostringstream& s, int width, int height, const std::string& title) {
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n";
}

struct Axis {
    double lo;
    double hi;
    double px_lo;
    double px_hi;
    double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

Axis padded_axis(double lo, double hi, double px_lo, double px_hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        return Axis{lo - pad, hi + pad, px_lo, px_hi};
    }
    const double pad = 0.08 * (hi - lo);
    return Axis{lo - pad, hi + pad, px_lo, px_hi};
}

// Linear blend between two RGB colours, t in [0,1].
std::string blend(const std::array<int, 3>& a, const std::array<int, 3>& b, double t) {
    std::array<char, 16> buf{};
    const auto ch = [&](std::size_t i) { return static_cast<int>(a[i] + (b[i] - a[i]) * t + 0.5); };
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", ch(0), ch(1), ch(2));
    return buf.data();
}

} // namespace

std::string tradeoff_chart(const std::vector<TradeoffPoint>& points) {
    constexpr int kW = 720;
    constexpr int kH = 520;
    constexpr double kLeft = 80;
    constexpr double kRight = kW - 40;
    constexpr double kTop = 50;
    constexpr double kBottom = kH - 70;

    std::ostringstream s;
    open_svg(s, kW, kH, "Stress-distortion trade-off");

    double mlo = 0.0, mhi = 0.0, ulo = 0.0, uhi = 0.0;
    if (!points.empty()) {
        mlo = mhi = points.front().mises;
        ulo = uhi = points.front().u3;
        for (const auto& p : points) {
            mlo = std::min(mlo, p.mises);
            mhi = std::max(mhi, p.mises);
            ulo = std::min(ulo, p.u3);
            uhi = std::max(uhi, p.u3);
        }
    }
    const Axis x = padded_axis(mlo, mhi, kLeft, kRight);
    const Axis y = padded_axis(ulo, uhi, kBottom, kTop);

    s << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight) << "\" y2=\""
      << num(kBottom) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop) << "\"/>\n</g>\n";
    s << "<g font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x.lo + (x.hi - x.lo) * i / 4.0;
        const double yv = y.lo + (y.hi - y.lo) * i / 4.0;
        s << "<text x=\"" << num(x.map(xv)) << "\" y=\"" << num(kBottom + 18) << "\" text-anchor=\"middle\">"
          << num(xv) << "</text>\n";
        s << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y.map(yv) + 4) << "\" text-anchor=\"end\">"
          << num(yv) << "</text>\n";
    }
    s << "</g>\n";
    s << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << kH - 25
      << "\" text-anchor=\"middle\" font-size=\"13\">Residual Mises top-k mean (MPa)</text>\n";
    s << "<text x=\"20\" y=\"" << num((kTop + kBottom) / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << num((kTop + kBottom) / 2) << ")\">U3 range (mm)</text>\n";

    std::vector<const TradeoffPoint*> front;
    for (const auto& p : points) {
        if (!p.dominated) front.push_back(&p);
    }
    std::sort(front.begin(), front.end(), [](const TradeoffPoint* a, const TradeoffPoint* b) {
        if (a->mises != b->mises) return a->mises < b->mises;
        return a->strategy_id < b->strategy_id;
    });
    if (front.size() > 1) {
        s << "<polyline fill=\"none\" stroke=\"#b2182b\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" points=\"";
        for (std::size_t i = 0; i < front.size(); ++i) {
            s << (i ? " " : "") << num(x.map(front[i]->mises)) << ',' << num(y.map(front[i]->u3));
        }
        s << "\"/>\n";
    }
    for (const auto& p : points) {
        const std::string colour = p.dominated ? "#4d4d4d" : "#b2182b";
        s << "<circle cx=\"" << num(x.map(p.mises)) << "\" cy=\"" << num(y.map(p.u3)) << "\" r=\"5\" fill=\""
          << colour << "\"/>\n";
        s << "<text x=\"" << num(x.map(p.mises) + 7) << "\" y=\"" << num(y.map(p.u3) - 7) << "\" font-size=\"11\">"
          << escape(p.strategy_id) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string robustness_heatmap(const RobustnessResult& sweep) {
    constexpr double kLabelW = 180;
    constexpr double kTop = 50;
    constexpr double kCellH = 20;
    const std::size_t rows = sweep.strategy_ids.size();
    const std::size_t cols = sweep.grid.size();
    const double cell_w = cols > 0 ? std::max(4.0, std::min(24.0, 600.0 / static_cast<double>(cols))) : 4.0;
    const int width = static_cast<int>(kLabelW + cell_w * static_cast<double>(cols) + 120);
    const int height = static_cast<int>(kTop + kCellH * static_cast<double>(rows) + 60);

    std::ostringstream s;
    open_svg(s, width, height, "Rank robustness across weightings");
    const std::array<int, 3> best{33, 102, 172};
    const std::array<int, 3> worst{247, 247, 247};
    const double span = rows > 1 ? static_cast<double>(rows - 1) : 1.0;

    for (std::size_t r = 0; r < rows; ++r) {
        const double yr = kTop + kCellH * static_cast<double>(r);
        s << "<text x=\"" << num(kLabelW - 6) << "\" y=\"" << num(yr + 14) << "\" text-anchor=\"end\" font-size=\"11\">"
          << escape(sweep.strategy_ids[r]) << "</text>\n";
        for (std::size_t c = 0; c < cols; ++c) {
            const int rk = sweep.ranks[r][c];
            s << "<rect x=\"" << num(kLabelW + cell_w * static_cast<double>(c)) << "\" y=\"" << num(yr)
              << "\" width=\"" << num(cell_w) << "\" height=\"" << num(kCellH) << "\" fill=\""
              << blend(best, worst, (rk - 1) / span) << "\"><title>" << escape(sweep.strategy_ids[r])
              << " beta=(" << num(sweep.grid[c].beta_sigma) << ',' << num(sweep.grid[c].beta_u) << ','
              << num(sweep.grid[c].beta_p) << ") rank " << rk << "</title></rect>\n";
        }
        if (r < sweep.rank_range.size()) {
            s << "<text x=\"" << num(kLabelW + cell_w * static_cast<double>(cols) + 8) << "\" y=\"" << num(yr + 14)
              << "\" font-size=\"11\">" << sweep.rank_range[r].first << '-' << sweep.rank_range[r].second
              << "</text>\n";
        }
    }
    s << "<text x=\"" << num(kLabelW) << "\" y=\"" << num(kTop + kCellH * static_cast<double>(rows) + 22)
      << "\" font-size=\"11\">weightings ordered by beta_sigma descending, then beta_u descending; "
      << "darker = better rank</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string agreement_bars(const AlignmentReport& report) {
    constexpr double kLeft = 60;
    constexpr double kTop = 70;
    constexpr double kPlotH = 260;
    constexpr double kBarW = 10;
    constexpr double kGroupGap = 14;
    const std::array<std::string, 4> colours{"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};

    std::vector<std::string> metrics;
    for (const auto& e : report.entries) {
        if (std::find(metrics.begin(), metrics.end(), e.metric_id) == metrics.end()) metrics.push_back(e.metric_id);
    }
    const double group_w = kBarW * static_cast<double>(kAllTargets.size()) + kGroupGap;
    const int width = static_cast<int>(kLeft + group_w * static_cast<double>(metrics.size()) + 40);
    const int height = static_cast<int>(kTop + kPlotH + 230);

    std::ostringstream s;
    open_svg(s, width, height, "Proxy-label pairwise agreement");
    const double base = kTop + kPlotH;

    for (int i = 0; i <= 4; ++i) {
        const double v = i / 4.0;
        const double yv = base - v * kPlotH;
        s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(yv) << "\" x2=\"" << width - 30 << "\" y2=\"" << num(yv)
          << "\" stroke=\"#dddddd\"/>\n";
        s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(yv + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
          << num(v) << "</text>\n";
    }
    for (std::size_t t = 0; t < kAllTargets.size(); ++t) {
        const double lx = kLeft + 110.0 * static_cast<double>(t);
        s << "<rect x=\"" << num(lx) << "\" y=\"38\" width=\"10\" height=\"10\" fill=\"" << colours[t] << "\"/>\n"
          << "<text x=\"" << num(lx + 14) << "\" y=\"47\" font-size=\"11\">" << to_string(kAllTargets[t])
          << "</text>\n";
    }
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        const double gx = kLeft + kGroupGap / 2 + group_w * static_cast<double>(m);
        for (std::size_t t = 0; t < kAllTargets.size(); ++t) {
            const AlignmentEntry& e = report.entry(metrics[m], kAllTargets[t]);
            const double h = e.agreement * kPlotH;
            s << "<rect x=\"" << num(gx + kBarW * static_cast<double>(t)) << "\" y=\"" << num(base - h)
              << "\" width=\"" << num(kBarW) << "\" height=\"" << num(h) << "\" fill=\"" << colours[t] << "\"><title>"
              << escape(metrics[m]) << " vs " << to_string(kAllTargets[t]) << ": " << num(e.agreement)
              << "</title></rect>\n";
        }
        const double lx = gx + kBarW * 2;
        s << "<text x=\"" << num(lx) << "\" y=\"" << num(base + 12) << "\" font-size=\"10\" text-anchor=\"end\" "
          << "transform=\"rotate(-60 " << num(lx) << ' ' << num(base + 12) << ")\">" << escape(metrics[m])
          << "</text>\n";
    }
    s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(base) << "\" x2=\"" << width - 30 << "\" y2=\"" << num(base)
      << "\" stroke=\"black\"/>\n";
    s << "</svg>\n";
    return s.str();
}

} // namespace scandiag::svg
