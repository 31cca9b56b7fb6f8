#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace csac::harness {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast exact/oracle checks (the first nine acceptance criteria). Run-based
/// checks write scratch artifacts under `workdir`.
std::vector<CheckResult> run_fast_checks(const std::filesystem::path& workdir);

}  // namespace csac::harness
