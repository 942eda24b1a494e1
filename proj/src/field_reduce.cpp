#include "scandiag/field_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <unordered_set>

#include "scandiag/errors.hpp"

namespace scandiag {

namespace {

void require_domain(const NodeFieldTable& table, std::size_t needed, const char* what) {
    const std::size_t have = table.domain_size();
    if (have < needed) {
        throw InsufficientDomain(std::string(what) + ": evaluation domain has " + std::to_string(have) +
                                 " nodes, need " + std::to_string(needed));
    }
}

} // namespace

void NodeFieldTable::validate() const {
    std::unordered_set<long long> ids;
    ids.reserve(rows.size());
    for (const auto& r : rows) {
        if (!ids.insert(r.node_id).second) {
            throw InvalidArgument("duplicate node_id " + std::to_string(r.node_id));
        }
        if (!std::isfinite(r.mises) || !std::isfinite(r.u3) || !std::isfinite(r.peeq)) {
            throw InvalidArgument("non-finite field value at node " + std::to_string(r.node_id));
        }
        if (r.mises < 0.0) throw InvalidArgument("negative mises at node " + std::to_string(r.node_id));
        if (r.peeq < 0.0) throw InvalidArgument("negative peeq at node " + std::to_string(r.node_id));
    }
}

std::size_t NodeFieldTable::domain_size() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const NodeRow& r) { return r.in_domain(); }));
}

void ReductionConfig::validate() const {
    if (top_k < 1) throw InvalidArgument("top_k must be at least 1");
    if (!(peeq_threshold >= 0.0) || !std::isfinite(peeq_threshold)) {
        throw InvalidArgument("peeq_threshold must be a nonnegative finite value");
    }
}

double mises_top_k_mean(const NodeFieldTable& table, const ReductionConfig& cfg) {
    cfg.validate();
    const auto k = static_cast<std::size_t>(cfg.top_k);
    require_domain(table, k, "mises top-k mean");
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        if (r.in_domain()) values.push_back(r.mises);
    }
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end(),
                      std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += values[i];
    return sum / static_cast<double>(k);
}

double u3_range(const NodeFieldTable& table) {
    require_domain(table, 1, "u3 range");
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto& r : table.rows) {
        if (!r.in_domain()) continue;
        if (first) {
            lo = hi = r.u3;
            first = false;
        } else {
            lo = std::min(lo, r.u3);
            hi = std::max(hi, r.u3);
        }
    }
    return hi - lo;
}

double peeq_fraction(const NodeFieldTable& table, const ReductionConfig& cfg) {
    cfg.validate();
    require_domain(table, 1, "peeq fraction");
    std::size_t domain = 0;
    std::size_t above = 0;
    for (const auto& r : table.rows) {
        if (!r.in_domain()) continue;
        ++domain;
        if (r.peeq > cfg.peeq_threshold) ++above;
    }
    return 100.0 * static_cast<double>(above) / static_cast<double>(domain);
}

LabelVector extract_labels(const NodeFieldTable& table, const ReductionConfig& cfg) {
    table.validate();
    return LabelVector{mises_top_k_mean(table, cfg), u3_range(table), peeq_fraction(table, cfg)};
}

std::vector<LabelVector> extract_labels_batch(const std::vector<NodeFieldTable>& tables,
                                              const ReductionConfig& cfg) {
    cfg.validate();
    std::vector<LabelVector> out(tables.size());
    const auto count = static_cast<std::ptrdiff_t>(tables.size());
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = extract_labels(tables[static_cast<std::size_t>(i)], cfg);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<LabelVector> extract_labels_batch_serial(const std::vector<NodeFieldTable>& tables,
                                                     const ReductionConfig& cfg) {
    std::vector<LabelVector> out;
    out.reserve(tables.size());
    for (const auto& t : tables) out.push_back(extract_labels(t, cfg));
    return out;
}

} // namespace scandiag
