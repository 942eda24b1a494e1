#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scandiag/field_reduce.hpp"
#include "scandiag/proxy_eval.hpp"
#include "scandiag/ranking.hpp"
#include "scandiag/track_bench.hpp"

namespace scandiag::io {

inline constexpr const char* kLabelsHeader = "strategy_id,mises_top5,u3_range,peeq_frac";
inline constexpr const char* kFieldHeader = "node_id,mises,u3,peeq,in_scan_region,bc_dominated";
inline constexpr const char* kStrategiesHeader = "strategy_id,step,track_index";

/// 6 significant digits, "%.6g" style; negative zero prints as 0.
std::string format_number(double value);

// Readers skip blank lines and lines starting with '#'. Errors are
// MalformedInput carrying the 1-based line number.
LabelSet read_labels_csv(std::istream& in);
LabelSet read_labels_csv(const std::filesystem::path& path);
NodeFieldTable read_field_table_csv(std::istream& in);
NodeFieldTable read_field_table_csv(const std::filesystem::path& path);

/// Loads <dir>/<id>.csv for every id. InputMismatch lists the ids without a file.
std::vector<NodeFieldTable> read_field_directory(const std::filesystem::path& dir,
                                                 const std::vector<std::string>& strategy_ids);
/// Strategy ids (file stems) of every *.csv in dir, sorted.
std::vector<std::string> list_field_directory(const std::filesystem::path& dir);

void write_labels_csv(std::ostream& out, const LabelSet& labels);
void write_strategies_csv(std::ostream& out, const std::vector<ScanOrder>& orders);
void write_proxy_csv(std::ostream& out, const ProxyMatrix& matrix);
void write_proxy_stats_csv(std::ostream& out, const NormalizationStats& stats);
void write_field_table_csv(std::ostream& out, const NodeFieldTable& table);

/// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace scandiag::io
