#pragma once

#include "wecp/fpp.hpp"
#include "wecp/kernel.hpp"
#include "wecp/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace wecp::io {

/// Malformed input; `line()` is 1-based (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Instance files:
//   p awecp <n> <m> <k>
//   e <u> <v> <w>      exactly m of these, 1-based ids, w >= 1
//   a <u> <c>          vertex u is annotated with weight c >= 1
//   # comment
AwecpInstance parse_instance(std::istream& in);
AwecpInstance read_instance(const std::filesystem::path& path);
void write_instance(std::ostream& out, const AwecpInstance& inst);

// Solution files:
//   s awecp <count>    followed by <count> lines "c <v1> <v2> ..."
//   s awecp NO
struct SolutionFile {
  bool no = false;
  CliquePartition partition;
  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

SolutionFile parse_solution(std::istream& in);
SolutionFile read_solution(const std::filesystem::path& path);
void write_solution(std::ostream& out, const CliquePartition& sol);
void write_no(std::ostream& out);

/// One line "m <orig> <kernel>" per original vertex, 1-based; kernel id 0 marks
/// a removed isolated vertex (all-zero row).
void write_mapping(std::ostream& out, const LiftInfo& lift);
LiftInfo parse_mapping(std::istream& in);

/// "p fpp <N> <v>" then v rows of space-separated incidence bits (rows = elements).
void write_incidence(std::ostream& out, const FppPlane& plane);

}  // namespace wecp::io
