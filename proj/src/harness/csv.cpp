#include "csac/harness/csv.hpp"

#include <charconv>
#include <fstream>

#include "csac/common.hpp"

namespace csac::harness {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_rows(const std::filesystem::path& file, const std::string& header,
                const std::vector<std::pair<long, double>>& rows) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << header << "\n";
  for (const auto& [step, value] : rows)
    out << step << "," << format_double(value) << "\n";
}

}  // namespace

void write_series_csv(const std::filesystem::path& file, const metrics::MetricSeries& s) {
  write_rows(file, "step,value", s.points);
}

void write_pairs_csv(const std::filesystem::path& file, const std::string& header,
                     const std::vector<std::pair<long, double>>& rows) {
  write_rows(file, header, rows);
}

}  // namespace csac::harness
