#pragma once

#include "wecp/model.hpp"

#include <cstdint>
#include <vector>

namespace wecp {

/// splitmix64 stream. Bounded draws use only integer arithmetic, so a seed
/// gives the same instance on every platform.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  /// True with probability p (resolution 2^-53).
  bool bernoulli(double p);

private:
  std::uint64_t state_;
};

struct RandomInstanceParams {
  int n = 6;
  double edge_probability = 0.5;
  int max_weight = 1;
  int k = 3;
  /// Probability that a vertex is annotated; its weight is drawn in [1, max_weight].
  double annotate_probability = 0.0;
  std::uint64_t seed = 1;
};

/// Erdos-Renyi graph with uniform edge weights in [1, max_weight].
AwecpInstance random_instance(const RandomInstanceParams& params);

/// Replaces every vertex v by a clique of factors[v] twins. Twins of v get
/// pairwise weight inner_weight[v]; copies of u and v inherit the u-v weight.
/// Annotations are copied to every twin (they must then equal inner_weight).
AwecpInstance blow_up(const AwecpInstance& base, const std::vector<int>& factors,
                      const std::vector<int>& inner_weight);

struct PlantedParams {
  int k = 2;
  int base_vertices = 4;
  int max_factor = 50;
  /// Shift one base entry by one after planting, which usually destroys the solution.
  bool perturb = false;
  std::uint64_t seed = 1;
};

/// Plants a random base decomposition B (base_vertices x k), sets the base
/// weights to B B^T, and blows each base vertex up into a twin block of
/// random size in [1, max_factor].
AwecpInstance planted_blowup(const PlantedParams& params);

}  // namespace wecp
