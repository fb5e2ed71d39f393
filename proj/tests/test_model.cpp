#include "support.hpp"
#include "wecp/generate.hpp"

#include <doctest.h>

using namespace wecp;
using namespace wecp::testing;

namespace {

BinaryMatrix rows_of(std::initializer_list<std::initializer_list<int>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  BinaryMatrix b(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int x : row) b(i, j++) = static_cast<std::uint8_t>(x);
    ++i;
  }
  return b;
}

WildcardMatrix wm(std::initializer_list<std::initializer_list<int>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix raw(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int x : row) raw(i, j++) = x;
    ++i;
  }
  return WildcardMatrix::from_raw(raw);
}

constexpr int W = kWildcard;

}  // namespace

TEST_CASE("wildcard equality") {
  const auto star = WildcardEntry::wildcard();
  CHECK(wildcard_eq(WildcardEntry::of(3), WildcardEntry::of(3)));
  CHECK(wildcard_eq(WildcardEntry::of(3), star));
  CHECK(wildcard_eq(star, WildcardEntry::of(3)));
  CHECK_FALSE(wildcard_eq(WildcardEntry::of(3), WildcardEntry::of(4)));
  // 3 ~ * ~ 4 but not 3 ~ 4.
  CHECK_FALSE(wildcard_eq(WildcardEntry::of(3), WildcardEntry::of(4)));

  for (int a = -1; a < 4; ++a)
    for (int b = -1; b < 4; ++b)
      for (int c = -1; c < 4; ++c) {
        auto e = [](int x) { return x < 0 ? WildcardEntry::wildcard() : WildcardEntry::of(x); };
        CHECK(wildcard_eq(e(a), e(b)) == wildcard_eq(e(b), e(a)));
        if (b >= 0 && wildcard_eq(e(a), e(b)) && wildcard_eq(e(b), e(c))) CHECK(wildcard_eq(e(a), e(c)));
      }
  CHECK_THROWS_AS(WildcardEntry::of(-2), std::invalid_argument);
}

TEST_CASE("wildcard matrix validation") {
  CHECK_THROWS_AS(wm({{W, 1}, {2, W}}), std::invalid_argument);
  CHECK_THROWS_AS(wm({{W, W}, {W, W}}), std::invalid_argument);
  CHECK_THROWS_AS(wm({{-3, 0}, {0, W}}), std::invalid_argument);
  WildcardMatrix a(3);
  CHECK(a(0, 0).is_wildcard());
  CHECK(a(0, 1).value() == 0);
  a.set(0, 2, 4);
  CHECK(a(2, 0).value() == 4);
  CHECK(a.max_weight() == 4);
}

TEST_CASE("instance to matrix") {
  SUBCASE("triangle") {
    auto [a, k] = awecp_to_bsddw(triangle());
    CHECK(k == 1);
    CHECK(a == wm({{W, 1, 1}, {1, W, 1}, {1, 1, W}}));
  }
  SUBCASE("weight-2 edge") {
    auto [a, k] = awecp_to_bsddw(single_edge(2, 2));
    CHECK(k == 2);
    CHECK(a == wm({{W, 2}, {2, W}}));
  }
  SUBCASE("annotated isolated vertex") {
    auto [a, k] = awecp_to_bsddw(make_instance(1, {}, 3, {{0, 3}}));
    CHECK(k == 3);
    CHECK(a == wm({{3}}));
  }
}

TEST_CASE("matrix to instance") {
  CHECK(bsddw_to_awecp(wm({{W, 2}, {2, W}}), 2) == single_edge(2, 2));
  const AwecpInstance two = bsddw_to_awecp(wm({{1, 0}, {0, W}}), 1);
  CHECK(two.vertex_count == 2);
  CHECK(two.edges.empty());
  CHECK(two.annotated == std::map<int, int>{{0, 1}});
}

TEST_CASE("instance round trips through the matrix form") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomInstanceParams p;
    p.n = 1 + static_cast<int>(seed % 9);
    p.edge_probability = 0.5;
    p.max_weight = 3;
    p.k = static_cast<int>(seed % 5);
    p.annotate_probability = 0.3;
    p.seed = seed;
    const AwecpInstance inst = random_instance(p);
    auto [a, k] = awecp_to_bsddw(inst);
    CHECK(bsddw_to_awecp(a, k) == inst);
    auto [a2, k2] = awecp_to_bsddw(bsddw_to_awecp(a, k));
    CHECK(a2 == a);
    CHECK(k2 == k);
  }
}

TEST_CASE("cliques to matrix") {
  CHECK(cliques_to_matrix({{{0, 1, 2}}}, 3, 1) == rows_of({{1}, {1}, {1}}));
  CHECK(cliques_to_matrix({{{0, 1}, {1, 2}}}, 3, 2) == rows_of({{1, 0}, {1, 1}, {0, 1}}));
  CHECK(cliques_to_matrix({}, 2, 1) == rows_of({{0}, {0}}));
  CHECK(cliques_to_matrix({{{0}}}, 2, 3) == rows_of({{1, 0, 0}, {0, 0, 0}}));
  CHECK_THROWS_WITH_AS(cliques_to_matrix({{{0}, {1}}}, 2, 1), "solution exceeds budget", std::invalid_argument);
}

TEST_CASE("matrix to cliques") {
  CHECK(matrix_to_cliques(rows_of({{1}, {1}, {1}})) == CliquePartition{{{0, 1, 2}}});
  CHECK(matrix_to_cliques(rows_of({{0, 0}, {0, 0}})).cliques.empty());
  CHECK(matrix_to_cliques(rows_of({{1, 0}, {1, 1}, {0, 1}})) == CliquePartition{{{0, 1}, {1, 2}}});
  CHECK(matrix_to_cliques(rows_of({{0, 1, 0}, {0, 1, 1}})) == CliquePartition{{{0, 1}, {1}}});
}

TEST_CASE("verify_bsd") {
  CHECK(verify_bsd(matrix_of(triangle()), rows_of({{1}, {1}, {1}}), 1));
  CHECK(verify_bsd(wm({{W, 2}, {2, W}}), rows_of({{1, 1}, {1, 1}}), 2));
  CHECK_FALSE(verify_bsd(matrix_of(path3(1)), rows_of({{1}, {1}, {1}}), 1));
  CHECK_FALSE(verify_bsd(wm({{W, 2}, {2, W}}), rows_of({{1, 1}, {1, 1}}), 1));
  CHECK_THROWS_AS(verify_bsd(matrix_of(triangle()), rows_of({{1}, {1}}), 1), std::invalid_argument);
}

TEST_CASE("verify_awecp") {
  CHECK(verify_awecp(triangle(), {{{0, 1, 2}}}));
  CHECK(verify_awecp(star3(3), {{{0, 1}, {0, 2}, {0, 3}}}));
  CHECK_FALSE(verify_awecp(single_edge(2, 2), {{{0, 1}}}));

  const auto under = find_awecp_violation(single_edge(2, 2), {{{0, 1}}});
  REQUIRE(under);
  CHECK(under->find("edge 1-2") != std::string::npos);
  CHECK(under->find("under-covered") != std::string::npos);

  const auto budget = find_awecp_violation(star3(2), {{{0, 1}, {0, 2}, {0, 3}}});
  REQUIRE(budget);
  CHECK(budget->find("budget exceeded") != std::string::npos);

  CHECK_FALSE(verify_awecp(path3(1), {{{0, 1, 2}}}));
  CHECK_FALSE(verify_awecp(make_instance(1, {}, 2, {{0, 2}}), {{{0}}}));
  CHECK(verify_awecp(make_instance(1, {}, 2, {{0, 2}}), {{{0}, {0}}}));
  CHECK_THROWS_AS(find_awecp_violation(triangle(), {{{0, 5}}}), std::out_of_range);
}

TEST_CASE("verify_awecp agrees with verify_bsd on every partition of small instances") {
  // Every assignment of vertices to k cliques, on random small instances.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomInstanceParams p;
    p.n = 3 + static_cast<int>(seed % 2);
    p.edge_probability = 0.6;
    p.max_weight = 2;
    p.k = 2;
    p.annotate_probability = 0.3;
    p.seed = seed;
    const AwecpInstance inst = random_instance(p);
    const int n = inst.vertex_count;
    const auto a = matrix_of(inst);
    for (std::uint32_t mask = 0; mask < (1U << (n * 2)); ++mask) {
      CliquePartition sol;
      sol.cliques.resize(2);
      for (int v = 0; v < n; ++v)
        for (int j = 0; j < 2; ++j)
          if (mask & (1U << (v * 2 + j))) sol.cliques[j].push_back(v);
      CHECK(verify_awecp(inst, sol) == verify_bsd(a, cliques_to_matrix(sol, n, 2), 2));
    }
  }
}

TEST_CASE("solutions are w-limited on distinct rows") {
  const auto a = matrix_of(single_edge(2, 3));
  for_each_bsd(a, 3, [&](const std::vector<std::uint32_t>& rows) {
    CHECK(__builtin_popcount(rows[0] & rows[1]) <= a.max_weight());
  });
}
