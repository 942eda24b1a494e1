#pragma once

#include <filesystem>

#include "scandiag/io.hpp"
#include "scandiag/ranking.hpp"

namespace scandiag::testing {

inline std::filesystem::path fixture_dir() { return SCANDIAG_FIXTURE_DIR; }

inline LabelSet fixture_labels() { return io::read_labels_csv(fixture_dir() / "lded32_table2.csv"); }

} // namespace scandiag::testing
