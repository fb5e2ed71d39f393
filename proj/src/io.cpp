#include "wecp/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace wecp::io {
namespace {

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

// Reads an integer token; rejects trailing garbage such as "3x".
long long read_int(std::istringstream& ls, int line_no, const char* what) {
  std::string token;
  if (!(ls >> token)) throw ParseError(line_no, std::string("missing ") + what);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("invalid ") + what + " '" + token + "'");
  }
  if (used != token.size()) throw ParseError(line_no, std::string("invalid ") + what + " '" + token + "'");
  return value;
}

void expect_end(std::istringstream& ls, int line_no) {
  std::string extra;
  if (ls >> extra) throw ParseError(line_no, "unexpected token '" + extra + "'");
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return in;
}

}  // namespace

AwecpInstance parse_instance(std::istream& in) {
  AwecpInstance inst;
  bool have_header = false;
  long long declared_edges = 0;
  std::set<std::pair<int, int>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string kind;
      ls >> kind;
      if (kind != "awecp") throw ParseError(line_no, "expected 'p awecp <n> <m> <k>'");
      const long long n = read_int(ls, line_no, "vertex count");
      declared_edges = read_int(ls, line_no, "edge count");
      const long long k = read_int(ls, line_no, "budget k");
      expect_end(ls, line_no);
      if (n < 0 || declared_edges < 0 || k < 0) throw ParseError(line_no, "header values must be nonnegative");
      if (n > (1 << 24)) throw ParseError(line_no, "vertex count too large");
      inst.vertex_count = static_cast<int>(n);
      inst.k = static_cast<int>(k);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "expected header 'p awecp <n> <m> <k>' before data");
    auto vertex = [&](const char* what) {
      const long long u = read_int(ls, line_no, what);
      if (u < 1 || u > inst.vertex_count)
        throw ParseError(line_no, "vertex " + std::to_string(u) + " out of range 1.." +
                                      std::to_string(inst.vertex_count));
      return static_cast<int>(u - 1);
    };
    if (tag == "e") {
      const int u = vertex("edge endpoint");
      const int v = vertex("edge endpoint");
      const long long w = read_int(ls, line_no, "edge weight");
      expect_end(ls, line_no);
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u + 1));
      if (w < 1 || w > (1 << 30)) throw ParseError(line_no, "edge weight must be >= 1");
      if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
        throw ParseError(line_no, "duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
      inst.edges.push_back({u, v, static_cast<int>(w)});
    } else if (tag == "a") {
      const int u = vertex("annotated vertex");
      const long long c = read_int(ls, line_no, "vertex weight");
      expect_end(ls, line_no);
      if (c < 1 || c > (1 << 30)) throw ParseError(line_no, "vertex weight must be >= 1");
      if (!inst.annotated.emplace(u, static_cast<int>(c)).second)
        throw ParseError(line_no, "duplicate annotation for vertex " + std::to_string(u + 1));
    } else {
      throw ParseError(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header 'p awecp <n> <m> <k>'");
  if (static_cast<long long>(inst.edges.size()) != declared_edges)
    throw ParseError(line_no, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                  std::to_string(inst.edges.size()));
  return inst;
}

AwecpInstance read_instance(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const AwecpInstance& inst) {
  out << "p awecp " << inst.vertex_count << ' ' << inst.edges.size() << ' ' << inst.k << '\n';
  for (const Edge& e : inst.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.weight << '\n';
  for (const auto& [v, c] : inst.annotated) out << "a " << v + 1 << ' ' << c << '\n';
}

SolutionFile parse_solution(std::istream& in) {
  SolutionFile sol;
  bool have_header = false;
  long long declared = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "s") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string kind, count;
      ls >> kind >> count;
      if (kind != "awecp") throw ParseError(line_no, "expected 's awecp <count>' or 's awecp NO'");
      expect_end(ls, line_no);
      if (count == "NO") {
        sol.no = true;
      } else {
        std::istringstream cs(count);
        declared = read_int(cs, line_no, "clique count");
        if (declared < 0) throw ParseError(line_no, "clique count must be nonnegative");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "expected header 's awecp <count>' before data");
    if (tag != "c") throw ParseError(line_no, "unknown line type '" + tag + "'");
    if (sol.no) throw ParseError(line_no, "clique line after 's awecp NO'");
    std::vector<int> clique;
    std::string token;
    while (ls >> token) {
      std::istringstream ts(token);
      const long long v = read_int(ts, line_no, "vertex id");
      if (v < 1 || v > (1LL << 30)) throw ParseError(line_no, "vertex id must be >= 1");
      clique.push_back(static_cast<int>(v - 1));
    }
    std::sort(clique.begin(), clique.end());
    if (std::adjacent_find(clique.begin(), clique.end()) != clique.end())
      throw ParseError(line_no, "vertex listed twice in one clique");
    sol.partition.cliques.push_back(std::move(clique));
  }
  if (!have_header) throw ParseError(line_no, "missing header 's awecp <count>'");
  if (!sol.no && static_cast<long long>(sol.partition.size()) != declared)
    throw ParseError(line_no, "header declares " + std::to_string(declared) + " cliques, found " +
                                  std::to_string(sol.partition.size()));
  return sol;
}

SolutionFile read_solution(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_solution(in);
}

void write_solution(std::ostream& out, const CliquePartition& sol) {
  out << "s awecp " << sol.size() << '\n';
  for (const auto& clique : sol.cliques) {
    out << 'c';
    for (int v : clique) out << ' ' << v + 1;
    out << '\n';
  }
}

void write_no(std::ostream& out) { out << "s awecp NO\n"; }

void write_mapping(std::ostream& out, const LiftInfo& lift) {
  for (std::size_t v = 0; v < lift.to_kernel.size(); ++v)
    out << "m " << v + 1 << ' ' << lift.to_kernel[v] + 1 << '\n';
}

LiftInfo parse_mapping(std::istream& in) {
  LiftInfo lift;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "m") throw ParseError(line_no, "expected 'm <orig> <kernel>'");
    const long long orig = read_int(ls, line_no, "original vertex");
    const long long target = read_int(ls, line_no, "kernel vertex");
    expect_end(ls, line_no);
    if (orig != static_cast<long long>(lift.to_kernel.size()) + 1)
      throw ParseError(line_no, "mapping lines must list original vertices in order");
    if (target < 0) throw ParseError(line_no, "kernel vertex must be >= 0");
    lift.to_kernel.push_back(static_cast<int>(target) - 1);
    lift.kernel_size = std::max(lift.kernel_size, static_cast<int>(target));
  }
  return lift;
}

void write_incidence(std::ostream& out, const FppPlane& plane) {
  const auto& f = plane.incidence;
  out << "p fpp " << plane.order << ' ' << f.rows() << '\n';
  for (Eigen::Index e = 0; e < f.rows(); ++e) {
    for (Eigen::Index s = 0; s < f.cols(); ++s) out << (s ? " " : "") << static_cast<int>(f(e, s));
    out << '\n';
  }
}

}  // namespace wecp::io
