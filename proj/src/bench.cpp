#include "wecp/bench.hpp"

#include "wecp/io.hpp"
#include "wecp/kernel.hpp"
#include "wecp/oracle.hpp"
#include "wecp/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace wecp {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const char* verdict_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kYes: return "YES";
    case SolveStatus::kNo: return "NO";
    case SolveStatus::kTimeout: return "TIMEOUT";
  }
  return "ERROR";
}

BenchRow run_fpt(const BenchRow& base, const AwecpInstance& inst, const BenchOptions& opts) {
  BenchRow row = base;
  row.solver = "kernel+fpt";
  const auto start = Clock::now();
  try {
    auto [a, k] = awecp_to_bsddw(inst);
    KernelResult kr = kernelize(a, k);
    if (kr.verdict == KernelVerdict::kNo) {
      row.candidates = 0;
      row.verdict = "NO";
    } else {
      row.kernel_n = static_cast<int>(kr.kernel.size());
      SolverOptions so;
      so.threads = opts.threads;
      so.deadline = start + opts.timeout;
      BsdSolution sol = solve_bsddw(kr.kernel, k, so);
      row.candidates = sol.stats.candidates;
      row.verdict = verdict_name(sol.status);
      if (sol.status == SolveStatus::kYes && !verify_bsd(a, lift_solution(sol.b, kr.lift), k))
        row.verdict = "ERROR";
    }
  } catch (const std::exception&) {
    row.verdict = "ERROR";
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

BenchRow run_oracle(const BenchRow& base, const AwecpInstance& inst, const BenchOptions& opts) {
  BenchRow row = base;
  row.solver = "oracle";
  const auto start = Clock::now();
  try {
    auto [a, k] = awecp_to_bsddw(inst);
    OracleOptions oo;
    oo.max_cells = opts.oracle_max_cells;
    oo.deadline = start + opts.timeout;
    const auto b = oracle_solve(a, k, oo);
    row.verdict = b ? "YES" : "NO";
  } catch (const OracleGuardError&) {
    row.verdict = "GUARD";
  } catch (const OracleTimeout&) {
    row.verdict = "TIMEOUT";
  } catch (const std::exception&) {
    row.verdict = "ERROR";
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::filesystem::path& corpus, const BenchOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const auto& file : files) {
    BenchRow base;
    base.instance = file.filename().string();
    AwecpInstance inst;
    try {
      inst = io::read_instance(file);
    } catch (const std::exception&) {
      base.solver = "parse";
      base.verdict = "ERROR";
      rows.push_back(base);
      continue;
    }
    base.n = inst.vertex_count;
    base.m = static_cast<int>(inst.edges.size());
    base.k = inst.k;
    for (const Edge& e : inst.edges) base.w = std::max(base.w, e.weight);
    for (const auto& [v, c] : inst.annotated) base.w = std::max(base.w, c);
    if (opts.run_fpt) rows.push_back(run_fpt(base, inst, opts));
    if (opts.run_oracle) rows.push_back(run_oracle(base, inst, opts));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    out << r.instance << ',' << r.solver << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.w << ',';
    if (r.kernel_n) out << *r.kernel_n;
    out << ',';
    if (r.candidates) out << *r.candidates;
    out << ',' << wall << ',' << r.verdict << '\n';
  }
}

}  // namespace wecp
