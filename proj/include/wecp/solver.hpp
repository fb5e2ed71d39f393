#pragma once

#include "wecp/model.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace wecp {

/// A k-bit row. Column 0 is the most significant of the k bits, so integer
/// order on rows is lexicographic order on {0,1}^k.
using RowBits = std::uint64_t;

/// Largest k the bit-row solver accepts.
inline constexpr int kMaxSolverColumns = 62;

RowBits row_bits(const BinaryMatrix& m, Eigen::Index row);
BinaryMatrix rows_to_matrix(std::span<const RowBits> rows, int k);

/// n x k binary matrix whose rows may be null (unfilled). A null row is not
/// the same thing as an all-zero row.
class PartialBinaryMatrix {
public:
  PartialBinaryMatrix() = default;
  PartialBinaryMatrix(int rows, int cols) : bits_(rows, 0), filled_(rows, false), cols_(cols) {}

  int rows() const { return static_cast<int>(bits_.size()); }
  int cols() const { return cols_; }
  bool is_null(int i) const { return !filled_[i]; }
  RowBits row(int i) const { return bits_[i]; }
  void set(int i, RowBits v) {
    bits_[i] = v;
    filled_[i] = true;
  }
  int filled_count() const;
  /// Requires every row to be filled.
  BinaryMatrix to_matrix() const;

  friend bool operator==(const PartialBinaryMatrix&, const PartialBinaryMatrix&) = default;

private:
  std::vector<RowBits> bits_;
  std::vector<bool> filled_;
  int cols_ = 0;
};

/// True iff every pair of distinct rows has dot product <= w.
bool is_w_limited(const BinaryMatrix& m, int w);

/// Bound on the ones of a w-limited k x k matrix, floor(k^{3/2} w^{1/2}) + k,
/// in exact integer arithmetic.
std::int64_t zarankiewicz_bound(int k, int w);

/// Same bound rounded up, ceil(k^{3/2} w^{1/2}) + k. Used as the enumeration cap
/// so that no w-limited matrix is ever pruned.
std::int64_t zarankiewicz_cap(int k, int w);

/// Real-valued count bound (2e sqrt(k/w))^{k^{3/2} w^{1/2} + k} on w-limited k x k matrices.
double w_limited_count_bound(int k, int w);

/// Streams every w-limited k x k binary matrix with at most ones_cap ones, in
/// row-major lexicographic order. The visitor returns false to stop early.
/// Returns the number of matrices visited.
std::uint64_t for_each_w_limited(int k, int w, std::int64_t ones_cap,
                                 const std::function<bool(std::span<const RowBits>)>& visit);

/// Matrix-valued convenience wrapper over for_each_w_limited.
std::vector<BinaryMatrix> enumerate_w_limited(int k, int w, std::int64_t ones_cap);

/// v^T v matches A(i,i) under wildcard_eq, and v . B_j = A(i,j) for every filled row j != i.
bool i_compatible(RowBits v, int i, const PartialBinaryMatrix& b, const WildcardMatrix& a);

struct ExtendResult {
  PartialBinaryMatrix matrix;
  /// Index of the first row that could not be filled, or rows() when complete.
  int stuck_row = 0;
};

/// Fills null rows in increasing order with the lexicographically first
/// compatible vector; stops at the first row with no compatible vector.
ExtendResult extend_basis(const WildcardMatrix& a, PartialBinaryMatrix b);

enum class SolveStatus { kYes, kNo, kTimeout };

struct SolveStats {
  /// Distinct candidate basis matrices examined. A prefix of rows stands for
  /// the matrix it forms when padded with zero rows, so this never exceeds
  /// the number of w-limited matrices under the ones cap.
  std::uint64_t candidates = 0;
  /// Candidate rows tried in the prefix walk.
  std::uint64_t nodes = 0;
  std::uint64_t extend_calls = 0;
  std::chrono::nanoseconds wall{0};
};

struct SolverOptions {
  /// Worker threads for the enumeration; 1 runs inline.
  int threads = 1;
  /// With several threads, return the same solution a single thread would.
  bool deterministic = true;
  /// Iterate complete basis matrices one by one instead of sharing prefixes.
  bool literal_enumeration = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  const std::atomic<bool>* cancel = nullptr;
};

struct BsdSolution {
  SolveStatus status = SolveStatus::kNo;
  BinaryMatrix b;
  /// Rows that hold basis vectors in the final working matrix (empty for shortcut answers).
  std::vector<int> basis_rows;
  SolveStats stats;
};

/// Exact rank-k decision for A: returns a verified decomposition or NO.
BsdSolution solve_bsddw(const WildcardMatrix& a, int k, const SolverOptions& opts = {});

struct WecpOptions {
  SolverOptions solver;
  bool use_kernel = true;
};

struct WecpSolution {
  SolveStatus status = SolveStatus::kNo;
  CliquePartition partition;
  int kernel_size = 0;
  bool kernel_rejected = false;
  SolveStats stats;
};

/// kernelize -> solve_bsddw -> lift -> cliques.
WecpSolution solve_wecp(const AwecpInstance& inst, const WecpOptions& opts = {});

}  // namespace wecp
