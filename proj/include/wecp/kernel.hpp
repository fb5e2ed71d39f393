#pragma once

#include "wecp/model.hpp"

#include <vector>

namespace wecp {

/// Twin equivalence classes. Blocks are sorted by their smallest vertex and
/// each block lists its vertices in ascending order.
struct BlockPartition {
  std::vector<std::vector<int>> blocks;
};

enum class KernelVerdict { kReduced, kNo };

/// Per original vertex: the kernel vertex its row is copied from, or
/// kZeroRow for removed isolated vertices (their solution row is all zeros).
struct LiftInfo {
  static constexpr int kZeroRow = -1;
  std::vector<int> to_kernel;
  int kernel_size = 0;
};

struct PreprocessResult {
  WildcardMatrix matrix;
  int k = 0;
  LiftInfo lift;
};

struct KernelResult {
  KernelVerdict verdict = KernelVerdict::kReduced;
  WildcardMatrix kernel;
  int k = 0;
  LiftInfo lift;
};

/// Two distinct vertices are twins when adjacent and their rows agree under wildcard_eq.
bool are_twins(const WildcardMatrix& a, int u, int v);

/// Exact twin classes, found by hashing candidate rows and verifying inside buckets.
BlockPartition compute_blocks(const WildcardMatrix& a);

/// Drops isolated vertices whose diagonal is the wildcard or 0.
PreprocessResult preprocess(const WildcardMatrix& a, int k);

/// Reduction Rule 1: more than 2^k blocks means no solution.
KernelVerdict apply_rule1(const BlockPartition& blocks, int k);

struct Rule2Result {
  WildcardMatrix matrix;
  /// Index in the input matrix -> index in the reduced matrix.
  std::vector<int> lift_map;
};

/// Reduction Rule 2: every block larger than 2^k collapses onto its lowest
/// vertex, whose diagonal becomes the block's common off-diagonal value.
Rule2Result apply_rule2(const WildcardMatrix& a, const BlockPartition& blocks, int k);

/// preprocess -> blocks -> Rule 1 -> Rule 2. A reduced kernel has at most 4^k vertices.
KernelResult kernelize(const WildcardMatrix& a, int k);

/// Expands a solution of the kernel into a solution of the original matrix.
/// Throws std::invalid_argument when B' does not have kernel_size rows.
BinaryMatrix lift_solution(const BinaryMatrix& kernel_solution, const LiftInfo& lift);

/// Identity lift over n vertices (used when kernelization is skipped).
LiftInfo identity_lift(int n);

}  // namespace wecp
