#pragma once

#include "wecp/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wecp {

/// Exact arithmetic in GF(p^m). Elements are the integers 0..q-1 read as
/// base-p coefficient vectors (least significant digit = constant term).
class GaloisField {
public:
  GaloisField(int p, int m);

  int characteristic() const { return p_; }
  int degree() const { return m_; }
  int order() const { return q_; }
  /// Monic modulus coefficients, constant term first (size m + 1). {0, 1} for prime fields.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int x, int y) const;
  int sub(int x, int y) const;
  int neg(int x) const;
  int mul(int x, int y) const;
  /// Throws std::domain_error for zero.
  int inv(int x) const;

private:
  std::vector<int> digits(int x) const;
  int from_digits(const std::vector<int>& d) const;

  int p_;
  int m_;
  int q_;
  std::vector<int> modulus_;
};

bool is_prime(int p);
/// (p, m) with n = p^m, or nullopt.
std::optional<std::pair<int, int>> prime_power(int n);

/// GF(p^m) with the lexicographically smallest monic irreducible modulus.
/// Throws std::invalid_argument when p is not prime or p^m > 2^16.
GaloisField gf_arith(int p, int m);

/// Element-set incidence of a projective plane of order N:
/// incidence(e, s) = 1 iff element e lies in set s.
struct FppPlane {
  int order = 0;
  BinaryMatrix incidence;
};

/// PG(2, N) from homogeneous coordinates over GF(N).
/// Throws std::invalid_argument when N is not a prime power.
FppPlane gen_fpp(int order);

/// First violated plane axiom, or nullopt when `plane` is a projective plane of its order.
std::optional<std::string> find_plane_violation(const FppPlane& plane);

/// Split graph on N^2 + N + 1 vertices: everything adjacent except pairs
/// inside I = {0, ..., N}. Budget k = N^2 + N.
struct GnInstance {
  int order = 0;
  std::vector<int> independent;
  AwecpInstance instance;
};

/// Throws std::invalid_argument for N < 2.
GnInstance gen_gn(int order);

/// Sets of the plane except `line_for_independent`, relabelled so that line's
/// points become I and the remaining points fill the clique part in order.
CliquePartition fpp_to_partition(const FppPlane& plane, int line_for_independent);

/// The cliques of a small partition of G_N together with I, as a plane.
/// Throws std::invalid_argument when the partition is invalid, too large, or
/// its sets fail the plane axioms.
FppPlane partition_to_fpp(const CliquePartition& sol, const GnInstance& gn);

/// Rank over the rationals (fraction-free elimination, exact).
int exact_rank(const BinaryMatrix& m);

struct BasisOnes {
  int rank = 0;
  int total_ones = 0;
  /// Fewest ones over all row bases when `exact`, else a lower bound.
  int basis_ones = 0;
  bool exact = false;
};

/// Exhaustive over row subsets when at most 200000 choices of the rows left out
/// exist; otherwise total ones minus the (rows - rank) heaviest rows.
BasisOnes basis_ones(const BinaryMatrix& b);

}  // namespace wecp
