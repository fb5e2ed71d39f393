#include "wecp/bench.hpp"
#include "wecp/fpp.hpp"
#include "wecp/generate.hpp"
#include "wecp/io.hpp"
#include "wecp/kernel.hpp"
#include "wecp/oracle.hpp"
#include "wecp/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

int default_threads() {
  if (const char* env = std::getenv("WECP_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void print_stats(const wecp::SolveStats& s, int n, int kernel_n) {
  std::cerr << "n=" << n << '\n'
            << "kernel_n=" << kernel_n << '\n'
            << "candidates=" << s.candidates << '\n'
            << "nodes=" << s.nodes << '\n'
            << "extend_calls=" << s.extend_calls << '\n'
            << "wall_ms=" << std::chrono::duration<double, std::milli>(s.wall).count() << '\n';
}

struct SolveArgs {
  std::string instance;
  bool deterministic = false;
  int threads = 1;
  bool no_kernel = false;
  bool stats = false;
};

int cmd_solve(const SolveArgs& args) {
  const wecp::AwecpInstance inst = wecp::io::read_instance(args.instance);
  wecp::WecpOptions opts;
  opts.use_kernel = !args.no_kernel;
  opts.solver.threads = args.threads;
  // A single thread is deterministic already; with more, only the flag makes it so.
  opts.solver.deterministic = args.deterministic;
  const wecp::WecpSolution sol = wecp::solve_wecp(inst, opts);
  if (args.stats) {
    print_stats(sol.stats, inst.vertex_count, sol.kernel_size);
    std::cerr << "kernel_rejected=" << (sol.kernel_rejected ? 1 : 0) << '\n';
  }
  if (sol.status == wecp::SolveStatus::kTimeout) {
    std::cerr << "error: solver stopped before a verdict\n";
    return kExitError;
  }
  if (sol.status == wecp::SolveStatus::kNo) {
    wecp::io::write_no(std::cout);
    return kExitNo;
  }
  if (auto bad = wecp::find_awecp_violation(inst, sol.partition)) {
    std::cerr << "internal error: solution failed verification: " << *bad << '\n';
    return kExitError;
  }
  wecp::io::write_solution(std::cout, sol.partition);
  return kExitYes;
}

int cmd_kernelize(const std::string& path, const std::string& map_path) {
  const wecp::AwecpInstance inst = wecp::io::read_instance(path);
  auto [a, k] = wecp::awecp_to_bsddw(inst);
  const wecp::KernelResult kr = wecp::kernelize(a, k);
  if (kr.verdict == wecp::KernelVerdict::kNo) {
    wecp::io::write_no(std::cout);
    return kExitNo;
  }
  wecp::io::write_instance(std::cout, wecp::bsddw_to_awecp(kr.kernel, kr.k));
  if (!map_path.empty()) {
    std::ofstream out(map_path);
    if (!out) throw std::runtime_error("cannot write " + map_path);
    wecp::io::write_mapping(out, kr.lift);
  }
  return kExitYes;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
  const wecp::AwecpInstance inst = wecp::io::read_instance(inst_path);
  const wecp::io::SolutionFile sol = wecp::io::read_solution(sol_path);
  if (sol.no) {
    std::cout << "solution file states NO; nothing to verify\n";
    return kExitNo;
  }
  for (const auto& c : sol.partition.cliques)
    for (int v : c)
      if (v < 0 || v >= inst.vertex_count) {
        std::cout << "vertex " << v + 1 << " out of range\n";
        return kExitNo;
      }
  if (auto bad = wecp::find_awecp_violation(inst, sol.partition)) {
    std::cout << *bad << '\n';
    return kExitNo;
  }
  std::cout << "ok\n";
  return kExitYes;
}

int cmd_oracle(const std::string& path, bool count, int max_cells, double timeout_s) {
  const wecp::AwecpInstance inst = wecp::io::read_instance(path);
  auto [a, k] = wecp::awecp_to_bsddw(inst);
  wecp::OracleOptions opts;
  opts.max_cells = max_cells;
  if (timeout_s > 0)
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
  if (count) {
    std::cout << wecp::oracle_count(a, k, opts) << '\n';
    return kExitYes;
  }
  const auto b = wecp::oracle_solve(a, k, opts);
  if (!b) {
    wecp::io::write_no(std::cout);
    return kExitNo;
  }
  wecp::io::write_solution(std::cout, wecp::matrix_to_cliques(*b));
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for annotated weighted edge clique partition"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  solve_args.threads = default_threads();
  auto* solve = app.add_subcommand("solve", "Solve an instance; prints a solution or 's awecp NO'");
  solve->add_option("instance", solve_args.instance, "Instance file")->required();
  solve->add_flag("--deterministic", solve_args.deterministic, "Same output for any thread count");
  solve->add_option("--threads", solve_args.threads, "Worker threads (default: WECP_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--no-kernel", solve_args.no_kernel, "Skip kernelization");
  solve->add_flag("--stats", solve_args.stats, "Print key=value statistics to stderr");

  std::string kern_path, map_path;
  auto* kern = app.add_subcommand("kernelize", "Print the kernel instance");
  kern->add_option("instance", kern_path, "Instance file")->required();
  kern->add_option("--map", map_path, "Write the vertex mapping to this file");

  std::string ver_inst, ver_sol;
  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  verify->add_option("instance", ver_inst, "Instance file")->required();
  verify->add_option("solution", ver_sol, "Solution file")->required();

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  int fpp_n = 2;
  auto* gen_fpp = gen->add_subcommand("fpp", "Incidence matrix of the projective plane of order N");
  gen_fpp->add_option("-N", fpp_n, "Order (prime power)")->required();
  int gn_n = 2;
  auto* gen_gn = gen->add_subcommand("gn", "Split graph G_N with k = N^2+N");
  gen_gn->add_option("-N", gn_n, "Order (>= 2)")->required();
  wecp::RandomInstanceParams rp;
  auto* gen_random = gen->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("-n", rp.n, "Vertices")->check(CLI::NonNegativeNumber);
  gen_random->add_option("-p,--edge-probability", rp.edge_probability, "Edge probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_random->add_option("-w,--max-weight", rp.max_weight, "Maximum edge weight")->check(CLI::PositiveNumber);
  gen_random->add_option("-k", rp.k, "Clique budget")->check(CLI::NonNegativeNumber);
  gen_random->add_option("--annotate", rp.annotate_probability, "Annotation probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_random->add_option("--seed", rp.seed, "Seed");

  std::string corpus;
  double bench_timeout = 60;
  std::string solvers = "kernel+fpt";
  int bench_cells = 42;
  int bench_threads = default_threads();
  auto* bench = app.add_subcommand("bench", "Run solvers over a directory of instances; CSV to stdout");
  bench->add_option("corpus", corpus, "Directory of instance files")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--timeout", bench_timeout, "Seconds per instance and solver");
  bench->add_option("--solvers", solvers, "Comma-separated: kernel+fpt, oracle");
  bench->add_option("--max-cells", bench_cells, "Oracle size guard (n*k)");
  bench->add_option("--threads", bench_threads, "Solver threads")->check(CLI::PositiveNumber);

  std::string oracle_path;
  bool oracle_count_flag = false;
  int oracle_cells = 42;
  double oracle_timeout = 0;
  auto* oracle = app.add_subcommand("oracle", "Brute-force reference solver");
  oracle->add_option("instance", oracle_path, "Instance file")->required();
  oracle->add_flag("--count", oracle_count_flag, "Count solutions up to column order");
  oracle->add_option("--max-cells", oracle_cells, "Size guard (n*k)");
  oracle->add_option("--timeout", oracle_timeout, "Seconds (0 = none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*kern) return cmd_kernelize(kern_path, map_path);
    if (*verify) return cmd_verify(ver_inst, ver_sol);
    if (*gen_fpp) {
      wecp::io::write_incidence(std::cout, wecp::gen_fpp(fpp_n));
      return 0;
    }
    if (*gen_gn) {
      if (!wecp::prime_power(gn_n))
        std::cerr << "warning: " << gn_n << " is not a prime power; no projective plane of this order is known\n";
      wecp::io::write_instance(std::cout, wecp::gen_gn(gn_n).instance);
      return 0;
    }
    if (*gen_random) {
      wecp::io::write_instance(std::cout, wecp::random_instance(rp));
      return 0;
    }
    if (*bench) {
      wecp::BenchOptions bo;
      bo.timeout = std::chrono::milliseconds(static_cast<long long>(bench_timeout * 1000));
      bo.run_fpt = bo.run_oracle = false;
      std::stringstream list(solvers);
      for (std::string name; std::getline(list, name, ',');) {
        if (name == "kernel+fpt") bo.run_fpt = true;
        else if (name == "oracle") bo.run_oracle = true;
        else throw std::invalid_argument("unknown solver '" + name + "'");
      }
      bo.oracle_max_cells = bench_cells;
      bo.threads = bench_threads;
      wecp::write_bench_csv(std::cout, wecp::run_bench(corpus, bo));
      return 0;
    }
    if (*oracle) return cmd_oracle(oracle_path, oracle_count_flag, oracle_cells, oracle_timeout);
  } catch (const wecp::OracleGuardError& e) {
    std::cerr << "error: " << e.what() << " (raise --max-cells)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
