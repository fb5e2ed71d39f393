#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wecp {

struct BenchOptions {
  std::chrono::milliseconds timeout{60000};
  bool run_fpt = true;
  bool run_oracle = false;
  int threads = 1;
  /// n * k limit handed to the oracle.
  int oracle_max_cells = 42;
};

/// One CSV row. Optional columns are written empty when they do not apply.
struct BenchRow {
  std::string instance;
  std::string solver;  // "kernel+fpt" or "oracle"
  int n = 0;
  int m = 0;
  int k = 0;
  int w = 0;
  std::optional<int> kernel_n;
  std::optional<std::uint64_t> candidates;
  double wall_ms = 0;
  std::string verdict;  // YES, NO, TIMEOUT, GUARD, ERROR
};

inline constexpr const char* kBenchHeader = "instance,solver,n,m,k,w,kernel_n,candidates,wall_ms,verdict";

/// Runs the selected solvers on every regular file in `corpus` (sorted by name).
std::vector<BenchRow> run_bench(const std::filesystem::path& corpus, const BenchOptions& opts);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace wecp
