#pragma once

// Instance builders and brute-force references shared by the test binaries.
// The references only use the definitions (B B^T against A), never the
// library's search code.

#include "wecp/model.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace wecp::testing {

inline AwecpInstance make_instance(int n, std::vector<Edge> edges, int k, std::map<int, int> annotated = {}) {
  AwecpInstance inst;
  inst.vertex_count = n;
  inst.edges = std::move(edges);
  inst.k = k;
  inst.annotated = std::move(annotated);
  return inst;
}

inline AwecpInstance complete(int n, int weight, int k) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, weight});
  return make_instance(n, edges, k);
}

inline AwecpInstance triangle(int k = 1) { return complete(3, 1, k); }
inline AwecpInstance path3(int k) { return make_instance(3, {{0, 1, 1}, {1, 2, 1}}, k); }
inline AwecpInstance star3(int k) { return make_instance(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, k); }
inline AwecpInstance single_edge(int weight, int k) { return make_instance(2, {{0, 1, weight}}, k); }

inline WildcardMatrix matrix_of(const AwecpInstance& inst) { return awecp_to_bsddw(inst).first; }

/// Direct check of B B^T against A, written independently of verify_bsd.
inline bool satisfies(const WildcardMatrix& a, const std::vector<std::uint32_t>& rows) {
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int dot = __builtin_popcount(rows[i] & rows[j]);
      const int want = a.raw(i, j);
      if (want == kWildcard) continue;
      if (dot != want) return false;
    }
  return true;
}

/// Calls f(rows) for every n x k binary matrix (n * k <= 24) that is a BSD of A.
template <class F>
void for_each_bsd(const WildcardMatrix& a, int k, F&& f) {
  const int n = static_cast<int>(a.size());
  std::vector<std::uint32_t> rows(n, 0);
  const std::uint32_t limit = 1U << k;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (satisfies(a, rows)) f(rows);
      return;
    }
    for (std::uint32_t v = 0; v < limit; ++v) {
      rows[i] = v;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        const int want = a.raw(i, j);
        if (want != kWildcard && __builtin_popcount(v & rows[j]) != want) ok = false;
      }
      if (ok) self(self, i + 1);
    }
  };
  rec(rec, 0);
}

inline bool brute_has_bsd(const WildcardMatrix& a, int k) {
  bool found = false;
  // No early exit needed at these sizes.
  for_each_bsd(a, k, [&](const std::vector<std::uint32_t>&) { found = true; });
  return found;
}

/// Solutions counted up to column permutation: columns sorted as bitstrings.
inline std::uint64_t brute_count_canonical(const WildcardMatrix& a, int k) {
  const int n = static_cast<int>(a.size());
  std::set<std::vector<std::uint32_t>> seen;
  for_each_bsd(a, k, [&](const std::vector<std::uint32_t>& rows) {
    std::vector<std::uint32_t> cols(k, 0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i)
        if (rows[i] & (1U << j)) cols[j] |= 1U << i;
    std::sort(cols.begin(), cols.end());
    seen.insert(cols);
  });
  return seen.size();
}

/// Number of k x k binary matrices with pairwise distinct-row dot products <= w.
inline std::uint64_t brute_w_limited(int k, int w) {
  std::uint64_t count = 0;
  const std::uint32_t mask = (1U << k) - 1;
  for (std::uint32_t m = 0; m < (1U << (k * k)); ++m) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        if (__builtin_popcount(((m >> (i * k)) & mask) & ((m >> (j * k)) & mask)) > w) ok = false;
    count += ok;
  }
  return count;
}

/// One representative per isomorphism class of graphs on n vertices, as edge lists.
inline std::vector<std::vector<Edge>> nonisomorphic_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const int m = static_cast<int>(pairs.size());
  std::vector<int> perm(n);
  std::set<std::uint32_t> canon;
  std::vector<std::vector<Edge>> out;
  for (std::uint32_t g = 0; g < (1U << m); ++g) {
    std::iota(perm.begin(), perm.end(), 0);
    std::uint32_t best = UINT32_MAX;
    do {
      std::uint32_t img = 0;
      for (int e = 0; e < m; ++e)
        if (g & (1U << e)) {
          int a = perm[pairs[e].first], b = perm[pairs[e].second];
          if (a > b) std::swap(a, b);
          const auto pos = std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin();
          img |= 1U << pos;
        }
      best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!canon.insert(best).second) continue;
    std::vector<Edge> edges;
    for (int e = 0; e < m; ++e)
      if (g & (1U << e)) edges.push_back({pairs[e].first, pairs[e].second, 1});
    out.push_back(edges);
  }
  return out;
}

}  // namespace wecp::testing
