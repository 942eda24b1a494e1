#pragma once

#include <string>
#include <vector>

namespace scandiag {

/// One node of an exported final-cooling field table.
struct NodeRow {
    long long node_id = 0;
    double mises = 0.0;  // MPa
    double u3 = 0.0;     // mm
    double peeq = 0.0;
    bool in_scan_region = true;
    bool bc_dominated = false;

    /// Member of the evaluation domain: scan region minus boundary-dominated nodes.
    bool in_domain() const { return in_scan_region && !bc_dominated; }
};

struct NodeFieldTable {
    std::vector<NodeRow> rows;

    /// Throws InvalidArgument on duplicate ids, negative mises/peeq or non-finite values.
    void validate() const;
    std::size_t domain_size() const;
};

struct ReductionConfig {
    int top_k = 5;
    double peeq_threshold = 0.0;

    void validate() const;
};

/// Residual outcome labels for one strategy.
struct LabelVector {
    double mises_top_k_mean = 0.0;  // MPa
    double u3_range = 0.0;          // mm
    double peeq_fraction = 0.0;     // percent, [0, 100]
};

double mises_top_k_mean(const NodeFieldTable& table, const ReductionConfig& cfg = {});
double u3_range(const NodeFieldTable& table);
double peeq_fraction(const NodeFieldTable& table, const ReductionConfig& cfg = {});

LabelVector extract_labels(const NodeFieldTable& table, const ReductionConfig& cfg = {});

/// Reduces one table per strategy, tables in parallel (OpenMP).
std::vector<LabelVector> extract_labels_batch(const std::vector<NodeFieldTable>& tables,
                                              const ReductionConfig& cfg = {});
/// Serial reference for extract_labels_batch.
std::vector<LabelVector> extract_labels_batch_serial(const std::vector<NodeFieldTable>& tables,
                                                     const ReductionConfig& cfg = {});

} // namespace scandiag
