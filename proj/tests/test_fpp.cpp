#include "support.hpp"
#include "wecp/fpp.hpp"
#include "wecp/solver.hpp"

#include <doctest.h>

#include <Eigen/LU>

using namespace wecp;
using namespace wecp::testing;

TEST_CASE("prime powers") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK(prime_power(8) == std::pair{2, 3});
  CHECK(prime_power(9) == std::pair{3, 2});
  CHECK(prime_power(7) == std::pair{7, 1});
  CHECK_FALSE(prime_power(6));
  CHECK_FALSE(prime_power(1));
}

TEST_CASE("small fields") {
  CHECK(gf_arith(2, 1).add(1, 1) == 0);
  CHECK(gf_arith(3, 1).inv(2) == 2);
  CHECK_THROWS_AS(gf_arith(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(gf_arith(2, 1).inv(0), std::domain_error);

  const GaloisField f = gf_arith(2, 2);
  CHECK(f.modulus() == std::vector<int>{1, 1, 1});
  // x = 2, x + 1 = 3.
  CHECK(f.mul(2, 2) == 3);
}

TEST_CASE("field axioms") {
  for (auto [p, m] : {std::pair{2, 2}, {3, 1}, {2, 3}, {3, 2}, {5, 1}}) {
    const GaloisField f = gf_arith(p, m);
    const int q = f.order();
    CAPTURE(q);
    for (int x = 0; x < q; ++x) {
      CHECK(f.add(x, 0) == x);
      CHECK(f.mul(x, 1) == x);
      CHECK(f.add(x, f.neg(x)) == 0);
      if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
      for (int y = 0; y < q; ++y) {
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        CHECK(f.sub(f.add(x, y), y) == x);
        if (x != 0 && y != 0) CHECK(f.mul(x, y) != 0);
        for (int z = 0; z < q; ++z) {
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
        }
      }
    }
  }
}

TEST_CASE("projective planes") {
  for (int n : {2, 3, 4, 5}) {
    CAPTURE(n);
    const FppPlane plane = gen_fpp(n);
    const int v = n * n + n + 1;
    REQUIRE(plane.incidence.rows() == v);
    REQUIRE(plane.incidence.cols() == v);
    CHECK_FALSE(find_plane_violation(plane));
    const Eigen::MatrixXi f = plane.incidence.cast<int>();
    CHECK((f.rowwise().sum().array() == n + 1).all());
    CHECK((f.colwise().sum().array() == n + 1).all());
    // Two points share one line, two lines share one point.
    const Eigen::MatrixXi points = f * f.transpose();
    const Eigen::MatrixXi lines = f.transpose() * f;
    const Eigen::MatrixXi expect = Eigen::MatrixXi::Ones(v, v) + n * Eigen::MatrixXi::Identity(v, v);
    CHECK(points == expect);
    CHECK(lines == expect);
    CHECK(exact_rank(plane.incidence) == v);
  }
  CHECK_THROWS_WITH_AS(gen_fpp(6), doctest::Contains("prime power"), std::invalid_argument);
}

TEST_CASE("plane violations are reported") {
  FppPlane plane = gen_fpp(2);
  plane.incidence(0, 0) ^= 1;
  CHECK(find_plane_violation(plane));
  FppPlane degenerate;
  degenerate.order = 2;
  degenerate.incidence = BinaryMatrix::Zero(7, 7);
  CHECK(find_plane_violation(degenerate));
}

TEST_CASE("G_N") {
  const GnInstance g2 = gen_gn(2);
  CHECK(g2.instance.vertex_count == 7);
  CHECK(g2.independent.size() == 3);
  CHECK(g2.instance.edges.size() == 18);
  CHECK(g2.instance.k == 6);
  CHECK(7 * 6 / 2 - g2.instance.edges.size() == 3);
  const GnInstance g3 = gen_gn(3);
  CHECK(g3.instance.vertex_count == 13);
  CHECK(g3.independent.size() == 4);
  CHECK(g3.instance.edges.size() == 72);
  CHECK(g3.instance.k == 12);
  CHECK(gen_gn(6).instance.edges.size() == 36 * 49 / 2);
  CHECK_THROWS_AS(gen_gn(1), std::invalid_argument);
}

TEST_CASE("plane to partition and back") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    const FppPlane plane = gen_fpp(n);
    const GnInstance gn = gen_gn(n);
    const int v = n * n + n + 1;
    for (int line = 0; line < v; line += std::max(1, v / 5)) {
      const CliquePartition part = fpp_to_partition(plane, line);
      CHECK(static_cast<int>(part.size()) == n * n + n);
      for (const auto& c : part.cliques) {
        CHECK(static_cast<int>(c.size()) == n + 1);
        int in_i = 0;
        for (int x : c) in_i += x <= n;
        CHECK(in_i <= 1);
      }
      CHECK(verify_awecp(gn.instance, part));
      CHECK_FALSE(find_plane_violation(partition_to_fpp(part, gn)));
    }
  }
}

TEST_CASE("partition_to_fpp rejects bad partitions") {
  const GnInstance gn = gen_gn(2);
  CliquePartition part = fpp_to_partition(gen_fpp(2), 0);
  CliquePartition big = part;
  big.cliques.push_back({3, 4, 5, 6});
  CHECK_THROWS_AS(partition_to_fpp(big, gn), std::invalid_argument);
  CliquePartition broken = part;
  broken.cliques.pop_back();
  CHECK_THROWS_AS(partition_to_fpp(broken, gn), std::invalid_argument);
}

TEST_CASE("solver output on G_2 is a Fano plane") {
  const GnInstance gn = gen_gn(2);
  const auto s = solve_wecp(gn.instance);
  REQUIRE(s.status == SolveStatus::kYes);
  CHECK(s.partition.size() == 6);
  CHECK_FALSE(find_plane_violation(partition_to_fpp(s.partition, gn)));
}

TEST_CASE("exact rank") {
  CHECK(exact_rank(BinaryMatrix::Identity(3, 3)) == 3);
  CHECK(exact_rank(BinaryMatrix::Zero(2, 4)) == 0);
  CHECK(exact_rank(BinaryMatrix::Ones(4, 3)) == 1);
  // Rank over GF(2) would be 2 here; over the rationals it is 3.
  BinaryMatrix m(3, 3);
  m << 1, 1, 0, 0, 1, 1, 1, 0, 1;
  CHECK(exact_rank(m) == 3);

  std::uint64_t state = 7;
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + t % 9, c = 1 + (t / 9) % 9;
    BinaryMatrix b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        b(i, j) = (state >> 60) & 1;
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b.cast<double>());
    CHECK(exact_rank(b) == lu.rank());
  }
}

TEST_CASE("basis ones") {
  const BasisOnes id = basis_ones(BinaryMatrix::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK(id.basis_ones == 3);
  CHECK(id.exact);

  BinaryMatrix b(3, 2);
  b << 1, 1, 1, 0, 0, 1;
  const BasisOnes r = basis_ones(b);
  CHECK(r.rank == 2);
  CHECK(r.total_ones == 4);
  CHECK(r.basis_ones == 2);

  const GnInstance gn = gen_gn(2);
  const BinaryMatrix f = cliques_to_matrix(fpp_to_partition(gen_fpp(2), 0), 7, 6);
  const BasisOnes fano = basis_ones(f);
  CHECK(fano.total_ones == 18);
  CHECK(fano.rank == 6);
  CHECK(fano.basis_ones >= 12);
}
