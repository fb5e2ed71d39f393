#include "wecp/generate.hpp"

#include <bit>
#include <stdexcept>

namespace wecp {

std::uint64_t SeededRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int SeededRng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<int>(x % span);
}

bool SeededRng::bernoulli(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

AwecpInstance random_instance(const RandomInstanceParams& params) {
  if (params.n < 0 || params.max_weight < 1 || params.k < 0)
    throw std::invalid_argument("random instance needs n >= 0, max_weight >= 1, k >= 0");
  SeededRng rng(params.seed);
  AwecpInstance inst;
  inst.vertex_count = params.n;
  inst.k = params.k;
  for (int u = 0; u < params.n; ++u)
    for (int v = u + 1; v < params.n; ++v)
      if (rng.bernoulli(params.edge_probability)) inst.edges.push_back({u, v, rng.uniform(1, params.max_weight)});
  for (int v = 0; v < params.n; ++v)
    if (rng.bernoulli(params.annotate_probability)) inst.annotated[v] = rng.uniform(1, params.max_weight);
  return inst;
}

AwecpInstance blow_up(const AwecpInstance& base, const std::vector<int>& factors,
                      const std::vector<int>& inner_weight) {
  const int b = base.vertex_count;
  if (static_cast<int>(factors.size()) != b || static_cast<int>(inner_weight.size()) != b)
    throw std::invalid_argument("one factor and inner weight per base vertex");
  std::vector<int> first(b + 1, 0);
  for (int x = 0; x < b; ++x) {
    if (factors[x] < 1) throw std::invalid_argument("blow-up factors must be >= 1");
    first[x + 1] = first[x] + factors[x];
  }
  AwecpInstance out;
  out.vertex_count = first[b];
  out.k = base.k;
  for (int x = 0; x < b; ++x) {
    if (inner_weight[x] > 0)
      for (int i = first[x]; i < first[x + 1]; ++i)
        for (int j = i + 1; j < first[x + 1]; ++j) out.edges.push_back({i, j, inner_weight[x]});
  }
  for (const Edge& e : base.edges)
    for (int i = first[e.u]; i < first[e.u + 1]; ++i)
      for (int j = first[e.v]; j < first[e.v + 1]; ++j) out.edges.push_back({i, j, e.weight});
  for (const auto& [x, c] : base.annotated)
    for (int i = first[x]; i < first[x + 1]; ++i) out.annotated[i] = c;
  return out;
}

AwecpInstance planted_blowup(const PlantedParams& params) {
  if (params.k < 1 || params.k > 20 || params.base_vertices < 1 || params.max_factor < 1)
    throw std::invalid_argument("planted blow-up needs 1 <= k <= 20 and positive sizes");
  SeededRng rng(params.seed);
  const int b = params.base_vertices;
  const int k = params.k;
  std::vector<std::uint32_t> rows(b);
  for (auto& r : rows) r = static_cast<std::uint32_t>(rng.uniform(0, (1 << k) - 1));

  std::vector<std::vector<int>> weight(b, std::vector<int>(b, 0));
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) weight[x][y] = std::popcount(rows[x] & rows[y]);
  if (params.perturb && b >= 2) {
    const int x = rng.uniform(0, b - 1);
    int y = rng.uniform(0, b - 2);
    if (y >= x) ++y;
    const int delta = weight[x][y] > 0 && rng.bernoulli(0.5) ? -1 : 1;
    weight[x][y] += delta;
    weight[y][x] += delta;
  }

  AwecpInstance base;
  base.vertex_count = b;
  base.k = k;
  std::vector<int> inner(b), factors(b);
  for (int x = 0; x < b; ++x) {
    for (int y = x + 1; y < b; ++y)
      if (weight[x][y] > 0) base.edges.push_back({x, y, weight[x][y]});
    inner[x] = weight[x][x];
    factors[x] = rng.uniform(1, params.max_factor);
    if (weight[x][x] > 0 && rng.bernoulli(0.2)) base.annotated[x] = weight[x][x];
  }
  return blow_up(base, factors, inner);
}

}  // namespace wecp
