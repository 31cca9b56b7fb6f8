#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "csac/metrics/metrics.hpp"

namespace csac::harness {

/// Shortest round-trip decimal form (std::to_chars), so identical doubles
/// always serialize to identical bytes.
std::string format_double(double v);

void write_series_csv(const std::filesystem::path& file, const metrics::MetricSeries& s);
void write_pairs_csv(const std::filesystem::path& file, const std::string& header,
                     const std::vector<std::pair<long, double>>& rows);

}  // namespace csac::harness
