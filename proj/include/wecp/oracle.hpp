#pragma once

#include "wecp/model.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace wecp {

/// Raised when an instance is too large for exhaustive search.
class OracleGuardError : public std::runtime_error {
public:
  OracleGuardError() : std::runtime_error("oracle guard exceeded") {}
};

/// Raised when OracleOptions::deadline passes during the search.
class OracleTimeout : public std::runtime_error {
public:
  OracleTimeout() : std::runtime_error("oracle deadline exceeded") {}
};

struct OracleOptions {
  /// Largest n * k accepted.
  int max_cells = 42;
  /// Largest k accepted regardless of max_cells (domains are bitsets over 2^k rows).
  int max_columns = 12;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Brute-force rank-k decision. Independent of the kernel and of the basis
/// search: rows are assigned vertex by vertex with forward checking.
/// Returns a decomposition or nullopt for NO.
std::optional<BinaryMatrix> oracle_solve(const WildcardMatrix& a, int k, const OracleOptions& opts = {});

/// Number of rank-k decompositions up to column permutation.
std::uint64_t oracle_count(const WildcardMatrix& a, int k, const OracleOptions& opts = {});

/// Number of k x k binary matrices whose distinct rows pairwise have dot product <= w,
/// by filtering all 2^(k*k) matrices. k <= 4.
std::uint64_t count_w_limited(int k, int w);

}  // namespace wecp
