#include "scandiag/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string_view>

#include "scandiag/errors.hpp"

namespace scandiag::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

double parse_double(std::string_view cell, std::size_t line, std::string_view column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw MalformedInput("line " + std::to_string(line) + ": cannot parse " + std::string(column) +
                                 " value '" + std::string(cell) + "'",
                             line);
    }
    return value;
}

long long parse_integer(std::string_view cell, std::size_t line, std::string_view column) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw MalformedInput("line " + std::to_string(line) + ": cannot parse " + std::string(column) +
                                 " value '" + std::string(cell) + "'",
                             line);
    }
    return value;
}

bool parse_flag(std::string_view cell, std::size_t line, std::string_view column) {
    if (cell == "0") return false;
    if (cell == "1") return true;
    throw MalformedInput("line " + std::to_string(line) + ": " + std::string(column) + " must be 0 or 1, got '" +
                             std::string(cell) + "'",
                         line);
}

// Calls on_row(cells, line_number) for each data row after checking the header.
template <typename OnRow>
void read_csv(std::istream& in, std::string_view header, OnRow on_row) {
    std::string raw;
    std::size_t line = 0;
    bool seen_header = false;
    const std::size_t columns = split(header).size();
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        if (!seen_header) {
            if (text != header) {
                throw MalformedInput("line " + std::to_string(line) + ": expected header '" + std::string(header) + "'",
                                     line);
            }
            seen_header = true;
            continue;
        }
        const auto cells = split(text);
        if (cells.size() != columns) {
            throw MalformedInput("line " + std::to_string(line) + ": expected " + std::to_string(columns) +
                                     " columns, found " + std::to_string(cells.size()),
                                 line);
        }
        on_row(cells, line);
    }
    if (!seen_header) throw MalformedInput("line " + std::to_string(line + 1) + ": missing header '" + std::string(header) + "'",
                                          line + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputMismatch("cannot open input file " + path.string(), {path.string()});
    return in;
}

} // namespace

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", value);
    return buf.data();
}

LabelSet read_labels_csv(std::istream& in) {
    LabelSet set;
    read_csv(in, kLabelsHeader, [&](const std::vector<std::string_view>& c, std::size_t line) {
        if (c[0].empty()) throw MalformedInput("line " + std::to_string(line) + ": empty strategy_id", line);
        const LabelVector v{parse_double(c[1], line, "mises_top5"), parse_double(c[2], line, "u3_range"),
                            parse_double(c[3], line, "peeq_frac")};
        try {
            set.add(std::string(c[0]), v);
        } catch (const InvalidArgument& e) {
            throw MalformedInput("line " + std::to_string(line) + ": " + e.what(), line);
        }
    });
    return set;
}

LabelSet read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    try {
        return read_labels_csv(in);
    } catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what(), e.line());
    }
}

NodeFieldTable read_field_table_csv(std::istream& in) {
    NodeFieldTable table;
    read_csv(in, kFieldHeader, [&](const std::vector<std::string_view>& c, std::size_t line) {
        NodeRow r;
        r.node_id = parse_integer(c[0], line, "node_id");
        r.mises = parse_double(c[1], line, "mises");
        r.u3 = parse_double(c[2], line, "u3");
        r.peeq = parse_double(c[3], line, "peeq");
        r.in_scan_region = parse_flag(c[4], line, "in_scan_region");
        r.bc_dominated = parse_flag(c[5], line, "bc_dominated");
        if (r.mises < 0.0 || r.peeq < 0.0) {
            throw MalformedInput("line " + std::to_string(line) + ": mises and peeq must be nonnegative", line);
        }
        table.rows.push_back(r);
    });
    try {
        table.validate();
    } catch (const InvalidArgument& e) {
        throw MalformedInput(e.what(), 0);
    }
    return table;
}

NodeFieldTable read_field_table_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    try {
        return read_field_table_csv(in);
    } catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what(), e.line());
    }
}

std::vector<NodeFieldTable> read_field_directory(const std::filesystem::path& dir,
                                                 const std::vector<std::string>& strategy_ids) {
    if (!std::filesystem::is_directory(dir)) {
        throw InputMismatch("field-table directory not found: " + dir.string(), {dir.string()});
    }
    std::vector<std::string> missing;
    for (const auto& id : strategy_ids) {
        if (!std::filesystem::is_regular_file(dir / (id + ".csv"))) missing.push_back(id);
    }
    if (!missing.empty()) {
        std::string msg = "field tables missing for strategies:";
        for (const auto& id : missing) msg += " " + id;
        throw InputMismatch(msg, missing);
    }
    std::vector<NodeFieldTable> tables;
    tables.reserve(strategy_ids.size());
    for (const auto& id : strategy_ids) tables.push_back(read_field_table_csv(dir / (id + ".csv")));
    return tables;
}

std::vector<std::string> list_field_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw InputMismatch("field-table directory not found: " + dir.string(), {dir.string()});
    }
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void write_labels_csv(std::ostream& out, const LabelSet& labels) {
    out << kLabelsHeader << '\n';
    for (const auto& e : labels.entries()) {
        out << e.strategy_id << ',' << format_number(e.labels.mises_top_k_mean) << ','
            << format_number(e.labels.u3_range) << ',' << format_number(e.labels.peeq_fraction) << '\n';
    }
}

void write_strategies_csv(std::ostream& out, const std::vector<ScanOrder>& orders) {
    out << kStrategiesHeader << '\n';
    for (const auto& o : orders) {
        for (std::size_t t = 0; t < o.order.size(); ++t) out << o.strategy_id << ',' << t << ',' << o.order[t] << '\n';
    }
}

void write_proxy_csv(std::ostream& out, const ProxyMatrix& matrix) {
    out << "strategy_id";
    for (const auto& info : proxy_metric_catalog()) out << ',' << info.id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        out << matrix.strategy_ids[i];
        for (const auto& info : proxy_metric_catalog()) out << ',' << format_number(matrix.rows[i].find(info.id)->second);
        out << '\n';
    }
}

void write_proxy_stats_csv(std::ostream& out, const NormalizationStats& stats) {
    out << "metric_id,min,max\n";
    for (const auto& info : proxy_metric_catalog()) {
        auto it = stats.find(info.id);
        if (it == stats.end()) continue;
        out << info.id << ',' << format_number(it->second.min) << ',' << format_number(it->second.max) << '\n';
    }
}

void write_field_table_csv(std::ostream& out, const NodeFieldTable& table) {
    out << kFieldHeader << '\n';
    for (const auto& r : table.rows) {
        out << r.node_id << ',' << format_number(r.mises) << ',' << format_number(r.u3) << ','
            << format_number(r.peeq) << ',' << (r.in_scan_region ? 1 : 0) << ',' << (r.bc_dominated ? 1 : 0) << '\n';
    }
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputMismatch("cannot open input file " + path.string(), {path.string()});
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 8192> buf{};
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xF]);
    }
    return hex;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << content;
}

} // namespace scandiag::io
