#include "wecp/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wecp {

WildcardEntry WildcardEntry::of(int value) {
  if (value < 0) throw std::invalid_argument("matrix entries must be nonnegative");
  return WildcardEntry(value);
}

WildcardMatrix::WildcardMatrix(Eigen::Index n) : raw_(IntMatrix::Zero(n, n)) {
  raw_.diagonal().setConstant(kWildcard);
}

WildcardMatrix WildcardMatrix::from_raw(IntMatrix raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index n = raw.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (raw(i, i) < kWildcard) throw std::invalid_argument("negative diagonal entry");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (raw(i, j) < 0 || raw(j, i) < 0)
        throw std::invalid_argument("off-diagonal entries must be integers >= 0");
      if (raw(i, j) != raw(j, i)) throw std::invalid_argument("matrix is not symmetric");
    }
  }
  WildcardMatrix m;
  m.raw_ = std::move(raw);
  return m;
}

WildcardEntry WildcardMatrix::operator()(Eigen::Index i, Eigen::Index j) const {
  const int r = raw_(i, j);
  return r == kWildcard ? WildcardEntry::wildcard() : WildcardEntry::of(r);
}

void WildcardMatrix::set(Eigen::Index i, Eigen::Index j, int value) {
  if (i == j) throw std::invalid_argument("use set_diagonal for diagonal entries");
  if (value < 0) throw std::invalid_argument("off-diagonal entries must be integers >= 0");
  raw_(i, j) = value;
  raw_(j, i) = value;
}

void WildcardMatrix::set_diagonal(Eigen::Index i, WildcardEntry entry) { raw_(i, i) = entry.raw(); }

int WildcardMatrix::max_weight() const {
  if (raw_.size() == 0) return 0;
  return std::max(0, raw_.maxCoeff());
}

void AwecpInstance::validate() const {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  if (k < 0) throw std::invalid_argument("negative budget k");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (e.weight < 1) throw std::invalid_argument("edge weight must be >= 1");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
      throw std::invalid_argument("duplicate edge");
  }
  for (const auto& [v, c] : annotated) {
    if (v < 0 || v >= vertex_count) throw std::invalid_argument("annotated vertex out of range");
    if (c < 1) throw std::invalid_argument("vertex weight must be >= 1");
  }
}

AwecpInstance AwecpInstance::normalized() const {
  AwecpInstance out = *this;
  for (Edge& e : out.edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.weight) < std::tie(b.u, b.v, b.weight);
  });
  return out;
}

bool operator==(const AwecpInstance& a, const AwecpInstance& b) {
  if (a.vertex_count != b.vertex_count || a.k != b.k || a.annotated != b.annotated) return false;
  return a.normalized().edges == b.normalized().edges;
}

std::pair<WildcardMatrix, int> awecp_to_bsddw(const AwecpInstance& inst) {
  inst.validate();
  WildcardMatrix a(inst.vertex_count);
  for (const Edge& e : inst.edges) a.set(e.u, e.v, e.weight);
  for (const auto& [v, c] : inst.annotated) a.set_diagonal(v, WildcardEntry::of(c));
  return {std::move(a), inst.k};
}

AwecpInstance bsddw_to_awecp(const WildcardMatrix& a, int k) {
  AwecpInstance inst;
  inst.vertex_count = static_cast<int>(a.size());
  inst.k = k;
  for (int u = 0; u < inst.vertex_count; ++u) {
    if (a.raw(u, u) != kWildcard) inst.annotated.emplace(u, a.raw(u, u));
    for (int v = u + 1; v < inst.vertex_count; ++v)
      if (a.raw(u, v) != 0) inst.edges.push_back({u, v, a.raw(u, v)});
  }
  return inst;
}

BinaryMatrix cliques_to_matrix(const CliquePartition& sol, int n, int k) {
  if (static_cast<int>(sol.cliques.size()) > k) throw std::invalid_argument("solution exceeds budget");
  BinaryMatrix b = BinaryMatrix::Zero(n, k);
  for (std::size_t j = 0; j < sol.cliques.size(); ++j) {
    for (int u : sol.cliques[j]) {
      if (u < 0 || u >= n) throw std::out_of_range("vertex id out of range");
      b(u, static_cast<Eigen::Index>(j)) = 1;
    }
  }
  return b;
}

CliquePartition matrix_to_cliques(const BinaryMatrix& b) {
  CliquePartition out;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    std::vector<int> clique;
    for (Eigen::Index u = 0; u < b.rows(); ++u)
      if (b(u, j) != 0) clique.push_back(static_cast<int>(u));
    if (!clique.empty()) out.cliques.push_back(std::move(clique));
  }
  return out;
}

bool verify_bsd(const WildcardMatrix& a, const BinaryMatrix& b, int k) {
  if (b.rows() != a.size()) throw std::invalid_argument("dimension mismatch between A and B");
  if (b.cols() > k) return false;
  if ((b.array() > 1).any()) return false;
  const IntMatrix bi = b.cast<int>();
  const IntMatrix gram = bi * bi.transpose();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < a.size(); ++j)
      if (!wildcard_eq(a.raw(i, j), gram(i, j))) return false;
  return true;
}

std::optional<std::string> find_awecp_violation(const AwecpInstance& inst,
                                                const CliquePartition& sol) {
  const int n = inst.vertex_count;
  for (const auto& clique : sol.cliques)
    for (int u : clique)
      if (u < 0 || u >= n) throw std::out_of_range("vertex id " + std::to_string(u + 1) + " out of range");

  std::ostringstream msg;
  if (static_cast<int>(sol.cliques.size()) > inst.k) {
    msg << "budget exceeded: " << sol.cliques.size() << " cliques > k=" << inst.k;
    return msg.str();
  }

  IntMatrix weight = IntMatrix::Zero(n, n);
  for (const Edge& e : inst.edges) {
    weight(e.u, e.v) = e.weight;
    weight(e.v, e.u) = e.weight;
  }
  IntMatrix cover = IntMatrix::Zero(n, n);
  for (std::size_t j = 0; j < sol.cliques.size(); ++j) {
    const auto& clique = sol.cliques[j];
    for (std::size_t x = 0; x < clique.size(); ++x) {
      ++cover(clique[x], clique[x]);
      for (std::size_t y = x + 1; y < clique.size(); ++y) {
        const int u = clique[x], v = clique[y];
        if (u == v) {
          msg << "clique " << j + 1 << " lists vertex " << u + 1 << " twice";
          return msg.str();
        }
        if (weight(u, v) == 0) {
          msg << "clique " << j + 1 << " is not a clique: " << u + 1 << " and " << v + 1
              << " are not adjacent";
          return msg.str();
        }
        ++cover(u, v);
        ++cover(v, u);
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (cover(u, v) != weight(u, v)) {
        msg << "edge " << u + 1 << "-" << v + 1 << " covered " << cover(u, v) << " times, weight "
            << weight(u, v) << (cover(u, v) < weight(u, v) ? " (under-covered)" : " (over-covered)");
        return msg.str();
      }
    }
  }
  for (const auto& [v, c] : inst.annotated) {
    if (cover(v, v) != c) {
      msg << "vertex " << v + 1 << " appears in " << cover(v, v) << " cliques, vertex weight " << c;
      return msg.str();
    }
  }
  return std::nullopt;
}

}  // namespace wecp
