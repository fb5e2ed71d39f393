#include "wecp/kernel.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace wecp {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hash contribution of value `a` at column `x`; summed so that single
// positions can be swapped in O(1).
std::uint64_t cell_hash(int x, int a) {
  return mix((static_cast<std::uint64_t>(x) << 32) ^ static_cast<std::uint32_t>(a));
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

// 2^k saturated to something larger than any vertex count.
std::int64_t pow2_saturated(int k) { return k >= 62 ? (std::int64_t{1} << 62) : (std::int64_t{1} << k); }

}  // namespace

bool are_twins(const WildcardMatrix& a, int u, int v) {
  if (u == v || a.raw(u, v) <= 0) return false;
  for (Eigen::Index x = 0; x < a.size(); ++x) {
    const int p = a.raw(u, x), q = a.raw(v, x);
    if (p != kWildcard && q != kWildcard && p != q) return false;
  }
  return true;
}

BlockPartition compute_blocks(const WildcardMatrix& a) {
  const int n = static_cast<int>(a.size());
  // Twins u, v with common value alpha = A(u,v) have identical rows once each
  // row's own diagonal is replaced by alpha. For every vertex and every
  // admissible alpha we bucket that signature, then verify exactly.
  std::vector<std::uint64_t> off_diag(n, 0);
  for (int u = 0; u < n; ++u)
    for (int x = 0; x < n; ++x)
      if (x != u) off_diag[u] += cell_hash(x, a.raw(u, x));

  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  std::vector<int> alphas;
  for (int u = 0; u < n; ++u) {
    alphas.clear();
    const int diag = a.raw(u, u);
    if (diag != kWildcard) {
      if (diag > 0) alphas.push_back(diag);
    } else {
      for (int x = 0; x < n; ++x)
        if (x != u && a.raw(u, x) > 0) alphas.push_back(a.raw(u, x));
      std::sort(alphas.begin(), alphas.end());
      alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    }
    for (int alpha : alphas) {
      const std::uint64_t key = mix(off_diag[u] + cell_hash(u, alpha) + mix(static_cast<std::uint64_t>(alpha)));
      buckets[key].push_back(u);
    }
  }

  DisjointSets sets(n);
  std::vector<int> reps;
  for (auto& [key, members] : buckets) {
    if (members.size() < 2) continue;
    reps.clear();
    for (int u : members) {
      bool joined = false;
      for (int r : reps) {
        if (are_twins(a, r, u)) {
          sets.unite(r, u);
          joined = true;
          break;
        }
      }
      if (!joined) reps.push_back(u);
    }
  }

  std::vector<std::vector<int>> by_root(n);
  for (int u = 0; u < n; ++u) by_root[sets.find(u)].push_back(u);
  BlockPartition out;
  for (auto& block : by_root)
    if (!block.empty()) out.blocks.push_back(std::move(block));
  return out;
}

PreprocessResult preprocess(const WildcardMatrix& a, int k) {
  const int n = static_cast<int>(a.size());
  PreprocessResult out;
  out.k = k;
  out.lift.to_kernel.assign(n, LiftInfo::kZeroRow);
  std::vector<int> kept;
  for (int v = 0; v < n; ++v) {
    bool isolated = true;
    for (int x = 0; x < n && isolated; ++x)
      if (x != v && a.raw(v, x) != 0) isolated = false;
    const int diag = a.raw(v, v);
    if (isolated && (diag == kWildcard || diag == 0)) continue;
    out.lift.to_kernel[v] = static_cast<int>(kept.size());
    kept.push_back(v);
  }
  const int m = static_cast<int>(kept.size());
  IntMatrix raw(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) raw(i, j) = a.raw(kept[i], kept[j]);
  out.matrix = WildcardMatrix::from_raw(std::move(raw));
  out.lift.kernel_size = m;
  return out;
}

KernelVerdict apply_rule1(const BlockPartition& blocks, int k) {
  return static_cast<std::int64_t>(blocks.blocks.size()) > pow2_saturated(k) ? KernelVerdict::kNo
                                                                              : KernelVerdict::kReduced;
}

Rule2Result apply_rule2(const WildcardMatrix& a, const BlockPartition& blocks, int k) {
  const int n = static_cast<int>(a.size());
  const std::int64_t limit = pow2_saturated(k);
  // representative[v] == v for surviving vertices.
  std::vector<int> representative(n);
  std::iota(representative.begin(), representative.end(), 0);
  std::vector<int> new_diagonal(n, kWildcard);
  std::vector<bool> collapsed(n, false);
  for (const auto& block : blocks.blocks) {
    if (static_cast<std::int64_t>(block.size()) <= limit) continue;
    const int v = block[0];
    const int u = block[1];
    for (int x : block) representative[x] = v;
    collapsed[v] = true;
    new_diagonal[v] = a.raw(u, v);
  }

  Rule2Result out;
  out.lift_map.assign(n, -1);
  std::vector<int> survivors;
  for (int x = 0; x < n; ++x)
    if (representative[x] == x) {
      out.lift_map[x] = static_cast<int>(survivors.size());
      survivors.push_back(x);
    }
  for (int x = 0; x < n; ++x) out.lift_map[x] = out.lift_map[representative[x]];

  const int m = static_cast<int>(survivors.size());
  IntMatrix raw(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) raw(i, j) = a.raw(survivors[i], survivors[j]);
  for (int i = 0; i < m; ++i)
    if (collapsed[survivors[i]]) raw(i, i) = new_diagonal[survivors[i]];
  out.matrix = WildcardMatrix::from_raw(std::move(raw));
  return out;
}

KernelResult kernelize(const WildcardMatrix& a, int k) {
  KernelResult out;
  out.k = k;
  PreprocessResult pre = preprocess(a, k);
  const BlockPartition blocks = compute_blocks(pre.matrix);
  if (apply_rule1(blocks, k) == KernelVerdict::kNo) {
    out.verdict = KernelVerdict::kNo;
    out.lift = std::move(pre.lift);
    return out;
  }
  Rule2Result reduced = apply_rule2(pre.matrix, blocks, k);
  out.kernel = std::move(reduced.matrix);
  out.lift.kernel_size = static_cast<int>(out.kernel.size());
  out.lift.to_kernel = std::move(pre.lift.to_kernel);
  for (int& target : out.lift.to_kernel)
    if (target != LiftInfo::kZeroRow) target = reduced.lift_map[target];
  return out;
}

BinaryMatrix lift_solution(const BinaryMatrix& kernel_solution, const LiftInfo& lift) {
  if (kernel_solution.rows() != lift.kernel_size)
    throw std::invalid_argument("kernel solution has the wrong number of rows");
  const Eigen::Index n = static_cast<Eigen::Index>(lift.to_kernel.size());
  BinaryMatrix out = BinaryMatrix::Zero(n, kernel_solution.cols());
  for (Eigen::Index x = 0; x < n; ++x)
    if (lift.to_kernel[x] != LiftInfo::kZeroRow) out.row(x) = kernel_solution.row(lift.to_kernel[x]);
  return out;
}

LiftInfo identity_lift(int n) {
  LiftInfo lift;
  lift.to_kernel.resize(n);
  std::iota(lift.to_kernel.begin(), lift.to_kernel.end(), 0);
  lift.kernel_size = n;
  return lift;
}

}  // namespace wecp
