#include "csac/harness/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "csac/harness/csv.hpp"

namespace csac::harness {

GridAxis parse_grid_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size())
    throw ConfigError("grid axis must look like key=v1,v2,... got '" + text + "'");
  GridAxis axis;
  axis.key = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string v =
        rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (v.empty()) throw ConfigError("empty value in grid axis '" + text + "'");
    axis.values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return axis;
}

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_');
  return out;
}

std::string cell_dir_name(const std::vector<std::pair<std::string, std::string>>& assignment,
                          std::uint64_t seed) {
  std::string name;
  for (const auto& [k, v] : assignment) {
    if (!name.empty()) name += "__";
    name += sanitize(k) + "-" + sanitize(v);
  }
  if (name.empty()) name = "base";
  return name + "__seed" + std::to_string(seed);
}

}  // namespace

SweepResult run_sweep(const std::string& config_text, const std::vector<GridAxis>& grid,
                      const std::vector<std::uint64_t>& seeds,
                      const std::filesystem::path& out_root, int jobs) {
  namespace fs = std::filesystem;
  fs::create_directories(out_root);

  // Cross product of axis assignments.
  std::vector<std::vector<std::pair<std::string, std::string>>> assignments{{}};
  for (const auto& axis : grid) {
    std::vector<std::vector<std::pair<std::string, std::string>>> next;
    for (const auto& partial : assignments)
      for (const auto& v : axis.values) {
        auto a = partial;
        a.emplace_back(axis.key, v);
        next.push_back(std::move(a));
      }
    assignments = std::move(next);
  }

  SweepResult result;
  for (const auto& a : assignments)
    for (const auto seed : seeds) {
      SweepCellResult cell;
      cell.assignment = a;
      cell.seed = seed;
      result.cells.push_back(std::move(cell));
    }

  std::atomic<std::size_t> next_idx{0};
  std::mutex mu;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next_idx.fetch_add(1);
      if (i >= result.cells.size()) return;
      SweepCellResult& cell = result.cells[i];
      const fs::path dir = out_root / cell_dir_name(cell.assignment, cell.seed);
      cell.dir = dir.string();
      try {
        const ExperimentConfig cfg = parse_config(config_text, cell.assignment);
        const RunArtifacts art = run_experiment(cfg, cell.seed, dir);
        std::lock_guard<std::mutex> lock(mu);
        cell.fingerprint = art.fingerprint;
        cell.average_performance = art.average_performance;
        cell.ok = true;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };

  const int n_jobs = std::max(1, std::min<int>(jobs, static_cast<int>(result.cells.size())));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(n_jobs));
  for (int i = 0; i < n_jobs; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  std::ofstream out(out_root / "sweep_summary.csv");
  out << "cell,seed,fingerprint,ok,average_performance,error\n";
  for (const auto& cell : result.cells) {
    std::string name;
    for (const auto& [k, v] : cell.assignment) {
      if (!name.empty()) name += " ";
      name += k + "=" + v;
    }
    out << "\"" << name << "\"," << cell.seed << "," << cell.fingerprint << ","
        << (cell.ok ? 1 : 0) << "," << format_double(cell.average_performance) << ",\""
        << cell.error << "\"\n";
  }
  return result;
}

std::vector<SummaryGroup> summarize_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::map<std::string, std::vector<metrics::RunSummary>> groups;
  if (!fs::exists(dir)) throw ConfigError("no such directory: " + dir.string());
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().filename() != "manifest.json") continue;
    std::ifstream in(entry.path());
    nlohmann::json j;
    in >> j;
    metrics::RunSummary rs;
    rs.seed = j.at("seed").get<std::uint64_t>();
    rs.config_fingerprint = j.at("fingerprint").get<std::string>();
    rs.average_performance = j.at("average_performance").get<double>();
    rs.dir = entry.path().parent_path().string();
    groups[rs.config_fingerprint].push_back(std::move(rs));
  }

  std::vector<SummaryGroup> out;
  for (auto& [fp, runs] : groups) {
    SummaryGroup g;
    g.fingerprint = fp;
    std::stable_sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
      return a.seed < b.seed;
    });
    g.runs = runs;
    g.aggregate = metrics::aggregate_runs(runs);
    out.push_back(std::move(g));
  }

  std::ofstream csv(dir / "summary.csv");
  csv << "fingerprint,runs,min,median,max\n";
  for (const auto& g : out) {
    csv << g.fingerprint << "," << g.runs.size() << ","
        << format_double(g.aggregate.min_run.average_performance) << ","
        << format_double(g.aggregate.median_run.average_performance) << ","
        << format_double(g.aggregate.max_run.average_performance) << "\n";
  }
  return out;
}

}  // namespace csac::harness
