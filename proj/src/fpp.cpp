#include "wecp/fpp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wecp {
namespace {

using Poly = std::vector<int>;  // constant term first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g over Z_p.
Poly poly_mod(Poly f, const Poly& g, int p) {
  trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    const int shift = static_cast<int>(f.size()) - 1 - dg;
    const int lead = f.back();
    for (int i = 0; i <= dg; ++i) f[i + shift] = ((f[i + shift] - lead * g[i]) % p + p) % p;
    trim(f);
  }
  return f;
}

Poly poly_from_index(std::int64_t index, int p, int degree) {
  Poly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = static_cast<int>(index % p);
    index /= p;
  }
  f[degree] = 1;
  return f;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_irreducible(const Poly& f, int p) {
  const int m = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= m / 2; ++d) {
    const std::int64_t count = ipow(p, d);
    for (std::int64_t t = 0; t < count; ++t)
      if (poly_mod(f, poly_from_index(t, p, d), p).empty()) return false;
  }
  return true;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::pair<int, int>> prime_power(int n) {
  if (n < 2) return std::nullopt;
  int p = 2;
  while (n % p != 0) ++p;
  int m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  if (n != 1) return std::nullopt;
  return std::pair{p, m};
}

GaloisField::GaloisField(int p, int m) : p_(p), m_(m), q_(1) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  for (int i = 0; i < m; ++i) {
    if (static_cast<std::int64_t>(q_) * p > (1 << 16)) throw std::invalid_argument("field order exceeds 2^16");
    q_ *= p;
  }
  if (m == 1) {
    modulus_ = {0, 1};
    return;
  }
  const std::int64_t count = ipow(p, m);
  for (std::int64_t t = 0; t < count; ++t) {
    Poly f = poly_from_index(t, p, m);
    if (is_irreducible(f, p)) {
      modulus_ = std::move(f);
      return;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::vector<int> GaloisField::digits(int x) const {
  std::vector<int> d(m_, 0);
  for (int i = 0; i < m_; ++i) {
    d[i] = x % p_;
    x /= p_;
  }
  return d;
}

int GaloisField::from_digits(const std::vector<int>& d) const {
  int x = 0;
  for (int i = m_ - 1; i >= 0; --i) x = x * p_ + (i < static_cast<int>(d.size()) ? d[i] : 0);
  return x;
}

int GaloisField::add(int x, int y) const {
  if (m_ == 1) return (x + y) % p_;
  auto a = digits(x), b = digits(y);
  for (int i = 0; i < m_; ++i) a[i] = (a[i] + b[i]) % p_;
  return from_digits(a);
}

int GaloisField::neg(int x) const {
  if (m_ == 1) return (p_ - x) % p_;
  auto a = digits(x);
  for (int& c : a) c = (p_ - c) % p_;
  return from_digits(a);
}

int GaloisField::sub(int x, int y) const { return add(x, neg(y)); }

int GaloisField::mul(int x, int y) const {
  if (m_ == 1) return static_cast<int>(static_cast<std::int64_t>(x) * y % p_);
  const auto a = digits(x), b = digits(y);
  Poly prod(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  return from_digits(poly_mod(std::move(prod), modulus_, p_));
}

int GaloisField::inv(int x) const {
  if (x == 0) throw std::domain_error("zero has no inverse");
  // x^(q-2)
  int result = 1, base = x, e = q_ - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

GaloisField gf_arith(int p, int m) { return GaloisField(p, m); }

FppPlane gen_fpp(int order) {
  const auto pm = prime_power(order);
  if (!pm) throw std::invalid_argument("plane order must be a prime power, got " + std::to_string(order));
  const GaloisField field(pm->first, pm->second);
  const int q = field.order();

  // Normalized homogeneous triples: first nonzero coordinate is 1.
  std::vector<std::array<int, 3>> triples;
  triples.push_back({0, 0, 1});
  for (int c = 0; c < q; ++c) triples.push_back({0, 1, c});
  for (int b = 0; b < q; ++b)
    for (int c = 0; c < q; ++c) triples.push_back({1, b, c});

  const auto v = static_cast<Eigen::Index>(triples.size());
  FppPlane plane;
  plane.order = order;
  plane.incidence = BinaryMatrix::Zero(v, v);
  for (Eigen::Index e = 0; e < v; ++e) {
    for (Eigen::Index s = 0; s < v; ++s) {
      int dot = 0;
      for (int t = 0; t < 3; ++t) dot = field.add(dot, field.mul(triples[e][t], triples[s][t]));
      plane.incidence(e, s) = dot == 0 ? 1 : 0;
    }
  }
  return plane;
}

std::optional<std::string> find_plane_violation(const FppPlane& plane) {
  const int n = plane.order;
  const Eigen::Index v = static_cast<Eigen::Index>(n) * n + n + 1;
  const BinaryMatrix& f = plane.incidence;
  std::ostringstream msg;
  if (n < 2) return "order must be at least 2";
  if (f.rows() != v || f.cols() != v) {
    msg << "expected " << v << " elements and sets, got " << f.rows() << " x " << f.cols();
    return msg.str();
  }
  const IntMatrix fi = f.cast<int>();
  for (Eigen::Index s = 0; s < v; ++s) {
    if (fi.col(s).sum() != n + 1) {
      msg << "set " << s + 1 << " has " << fi.col(s).sum() << " elements, expected " << n + 1;
      return msg.str();
    }
  }
  for (Eigen::Index e = 0; e < v; ++e) {
    if (fi.row(e).sum() != n + 1) {
      msg << "element " << e + 1 << " lies in " << fi.row(e).sum() << " sets, expected " << n + 1;
      return msg.str();
    }
  }
  const IntMatrix pairs = fi * fi.transpose();
  const IntMatrix meets = fi.transpose() * fi;
  for (Eigen::Index x = 0; x < v; ++x) {
    for (Eigen::Index y = x + 1; y < v; ++y) {
      if (pairs(x, y) != 1) {
        msg << "elements " << x + 1 << " and " << y + 1 << " share " << pairs(x, y) << " sets";
        return msg.str();
      }
      if (meets(x, y) != 1) {
        msg << "sets " << x + 1 << " and " << y + 1 << " meet in " << meets(x, y) << " elements";
        return msg.str();
      }
    }
  }
  // Four elements, no three in a common set.
  auto collinear = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) {
    return ((f.row(a).array() * f.row(b).array() * f.row(c).array()) != 0).any();
  };
  for (Eigen::Index a = 0; a < v; ++a)
    for (Eigen::Index b = a + 1; b < v; ++b)
      for (Eigen::Index c = b + 1; c < v; ++c) {
        if (collinear(a, b, c)) continue;
        for (Eigen::Index d = c + 1; d < v; ++d)
          if (!collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d)) return std::nullopt;
      }
  return "no four elements in general position";
}

GnInstance gen_gn(int order) {
  if (order < 2) throw std::invalid_argument("G_N needs N >= 2");
  GnInstance gn;
  gn.order = order;
  const int n = order * order + order + 1;
  for (int i = 0; i <= order; ++i) gn.independent.push_back(i);
  gn.instance.vertex_count = n;
  gn.instance.k = order * order + order;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!(u <= order && v <= order)) gn.instance.edges.push_back({u, v, 1});
  return gn;
}

CliquePartition fpp_to_partition(const FppPlane& plane, int line_for_independent) {
  const Eigen::Index v = plane.incidence.rows();
  if (line_for_independent < 0 || line_for_independent >= plane.incidence.cols())
    throw std::out_of_range("line index out of range");
  std::vector<int> label(v, -1);
  int next_independent = 0;
  int next_clique = plane.order + 1;
  for (Eigen::Index e = 0; e < v; ++e)
    label[e] = plane.incidence(e, line_for_independent) ? next_independent++ : next_clique++;

  CliquePartition out;
  for (Eigen::Index s = 0; s < plane.incidence.cols(); ++s) {
    if (s == line_for_independent) continue;
    std::vector<int> clique;
    for (Eigen::Index e = 0; e < v; ++e)
      if (plane.incidence(e, s)) clique.push_back(label[e]);
    std::sort(clique.begin(), clique.end());
    out.cliques.push_back(std::move(clique));
  }
  return out;
}

FppPlane partition_to_fpp(const CliquePartition& sol, const GnInstance& gn) {
  const int n = gn.order;
  if (auto violation = find_awecp_violation(gn.instance, sol))
    throw std::invalid_argument("not a clique partition of G_N: " + *violation);
  if (static_cast<int>(sol.size()) > n * n + n)
    throw std::invalid_argument("partition has more than N^2 + N cliques");
  for (std::size_t j = 0; j < sol.size(); ++j) {
    if (static_cast<int>(sol.cliques[j].size()) != n + 1) {
      throw std::invalid_argument("clique " + std::to_string(j + 1) + " has " +
                                  std::to_string(sol.cliques[j].size()) + " vertices, expected N + 1");
    }
  }
  FppPlane plane;
  plane.order = n;
  const int vertices = gn.instance.vertex_count;
  plane.incidence = BinaryMatrix::Zero(vertices, static_cast<Eigen::Index>(sol.size()) + 1);
  for (std::size_t j = 0; j < sol.size(); ++j)
    for (int u : sol.cliques[j]) plane.incidence(u, static_cast<Eigen::Index>(j)) = 1;
  for (int u : gn.independent) plane.incidence(u, static_cast<Eigen::Index>(sol.size())) = 1;
  if (auto violation = find_plane_violation(plane))
    throw std::invalid_argument("sets do not form a projective plane: " + *violation);
  return plane;
}

int exact_rank(const BinaryMatrix& m) {
  // Bareiss elimination; every intermediate value is a minor of m.
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a[i][j] = m(i, j);
  __int128 prev = 1;
  int rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

BasisOnes basis_ones(const BinaryMatrix& b) {
  BasisOnes out;
  out.rank = exact_rank(b);
  const auto rows = static_cast<int>(b.rows());
  std::vector<int> row_ones(rows);
  for (int i = 0; i < rows; ++i) row_ones[i] = b.row(i).cast<int>().sum();
  out.total_ones = std::accumulate(row_ones.begin(), row_ones.end(), 0);

  if (out.rank == rows) {
    out.basis_ones = out.total_ones;
    out.exact = true;
    return out;
  }
  // Exhaustive over the excluded rows when there are few ways to pick them.
  const int drop = rows - out.rank;
  double ways = 1;
  for (int i = 0; i < drop; ++i) ways = ways * (rows - i) / (i + 1);
  if (ways <= 200000) {
    std::vector<bool> excluded(rows, false);
    std::fill(excluded.begin(), excluded.begin() + drop, true);
    int best = out.total_ones + 1;
    do {
      BinaryMatrix sub(out.rank, b.cols());
      int ones = 0, r = 0;
      for (int i = 0; i < rows; ++i)
        if (!excluded[i]) {
          sub.row(r++) = b.row(i);
          ones += row_ones[i];
        }
      if (ones < best && exact_rank(sub) == out.rank) best = ones;
    } while (std::prev_permutation(excluded.begin(), excluded.end()));
    out.basis_ones = best;
    out.exact = true;
    return out;
  }
  std::vector<int> sorted = row_ones;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  out.basis_ones = out.total_ones - std::accumulate(sorted.begin(), sorted.begin() + (rows - out.rank), 0);
  out.exact = false;
  return out;
}

}  // namespace wecp
