#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wecp {

/// Raw storage value used for the diagonal wildcard inside WildcardMatrix.
inline constexpr int kWildcard = -1;

/// A matrix entry that is either a nonnegative integer or the wildcard.
class WildcardEntry {
public:
  constexpr WildcardEntry() = default;
  static constexpr WildcardEntry wildcard() { return WildcardEntry(kWildcard); }
  static WildcardEntry of(int value);

  constexpr bool is_wildcard() const { return raw_ == kWildcard; }
  /// Integer payload; only meaningful when !is_wildcard().
  constexpr int value() const { return raw_; }
  constexpr int raw() const { return raw_; }

  friend constexpr bool operator==(WildcardEntry, WildcardEntry) = default;

private:
  explicit constexpr WildcardEntry(int raw) : raw_(raw) {}
  int raw_ = 0;
};

/// Wildcard equality: equal values, or either side is the wildcard.
/// Not transitive through the wildcard.
constexpr bool wildcard_eq(WildcardEntry x, WildcardEntry y) {
  return x.is_wildcard() || y.is_wildcard() || x.value() == y.value();
}

/// Raw-storage variant of wildcard_eq used in the hot loops.
constexpr bool wildcard_eq(int raw, int value) {
  return raw == kWildcard || raw == value;
}

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using BinaryMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Symmetric nonnegative integer matrix whose diagonal may hold wildcards.
///
/// Off-diagonal entries are integers >= 0 and mirror each other. The
/// wildcard is stored as kWildcard and can only appear on the diagonal.
class WildcardMatrix {
public:
  WildcardMatrix() = default;
  /// n x n matrix with zero off-diagonal and wildcard diagonal (the edgeless graph).
  explicit WildcardMatrix(Eigen::Index n);

  /// Validates and adopts a raw matrix (kWildcard marks diagonal wildcards).
  /// Throws std::invalid_argument on asymmetry, negative entries or off-diagonal wildcards.
  static WildcardMatrix from_raw(IntMatrix raw);

  Eigen::Index size() const { return raw_.rows(); }
  WildcardEntry operator()(Eigen::Index i, Eigen::Index j) const;
  int raw(Eigen::Index i, Eigen::Index j) const { return raw_(i, j); }
  const IntMatrix& raw() const { return raw_; }

  /// Sets A(i,j) and A(j,i); i != j, value >= 0.
  void set(Eigen::Index i, Eigen::Index j, int value);
  void set_diagonal(Eigen::Index i, WildcardEntry entry);

  /// Largest integer entry (the instance weight w); 0 if none is positive.
  int max_weight() const;

  friend bool operator==(const WildcardMatrix& a, const WildcardMatrix& b) {
    return a.raw_.rows() == b.raw_.rows() && a.raw_ == b.raw_;
  }

private:
  IntMatrix raw_;
};

struct Edge {
  int u = 0;
  int v = 0;
  int weight = 1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Annotated weighted edge clique partition instance.
/// Vertex ids are 0-based; `annotated` maps vertices of W to their weight.
struct AwecpInstance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::map<int, int> annotated;
  int k = 0;

  /// Throws std::invalid_argument describing the first broken invariant.
  void validate() const;

  /// Copy with every edge stored as (min, max) and edges sorted.
  AwecpInstance normalized() const;

  /// Equality of the underlying weighted graphs (edge order and orientation ignored).
  friend bool operator==(const AwecpInstance& a, const AwecpInstance& b);
};

/// Ordered list of vertex sets (each sorted ascending).
struct CliquePartition {
  std::vector<std::vector<int>> cliques;

  std::size_t size() const { return cliques.size(); }
  friend bool operator==(const CliquePartition&, const CliquePartition&) = default;
};

/// Instance -> matrix. Edge weights go off-diagonal, annotated weights on the
/// diagonal, wildcard elsewhere on the diagonal.
std::pair<WildcardMatrix, int> awecp_to_bsddw(const AwecpInstance& inst);

/// Exact inverse of awecp_to_bsddw. Edges are emitted in (u < v) row-major order.
AwecpInstance bsddw_to_awecp(const WildcardMatrix& a, int k);

/// B(u,j) = 1 iff u is in clique j; columns past the partition size are zero.
/// Throws std::invalid_argument("solution exceeds budget") when |cliques| > k.
BinaryMatrix cliques_to_matrix(const CliquePartition& sol, int n, int k);

/// Column j becomes the clique {u : B(u,j) = 1}; all-zero columns are dropped.
CliquePartition matrix_to_cliques(const BinaryMatrix& b);

/// True iff B has at most k columns and B B^T matches A entrywise under wildcard_eq.
/// Throws std::invalid_argument when B's row count differs from A's dimension.
bool verify_bsd(const WildcardMatrix& a, const BinaryMatrix& b, int k);

/// First violated AWECP condition as a human-readable message (1-based ids),
/// or nullopt when the partition is a valid solution.
/// Throws std::out_of_range for vertex ids outside the instance.
std::optional<std::string> find_awecp_violation(const AwecpInstance& inst,
                                                const CliquePartition& sol);

inline bool verify_awecp(const AwecpInstance& inst, const CliquePartition& sol) {
  return !find_awecp_violation(inst, sol).has_value();
}

}  // namespace wecp
