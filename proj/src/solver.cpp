#include "wecp/solver.hpp"

#include "wecp/kernel.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace wecp {

RowBits row_bits(const BinaryMatrix& m, Eigen::Index row) {
  const int k = static_cast<int>(m.cols());
  RowBits v = 0;
  for (int j = 0; j < k; ++j)
    if (m(row, j) != 0) v |= RowBits{1} << (k - 1 - j);
  return v;
}

BinaryMatrix rows_to_matrix(std::span<const RowBits> rows, int k) {
  BinaryMatrix m = BinaryMatrix::Zero(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k; ++j) m(static_cast<Eigen::Index>(i), j) = (rows[i] >> (k - 1 - j)) & 1U;
  return m;
}

int PartialBinaryMatrix::filled_count() const {
  int c = 0;
  for (bool f : filled_) c += f ? 1 : 0;
  return c;
}

BinaryMatrix PartialBinaryMatrix::to_matrix() const {
  for (bool f : filled_)
    if (!f) throw std::logic_error("partial matrix still has null rows");
  return rows_to_matrix(bits_, cols_);
}

bool is_w_limited(const BinaryMatrix& m, int w) {
  const IntMatrix mi = m.cast<int>();
  const IntMatrix gram = mi * mi.transpose();
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j)
      if (gram(i, j) > w) return false;
  return true;
}

namespace {

std::int64_t isqrt_floor(std::int64_t x) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

}  // namespace

std::int64_t zarankiewicz_bound(int k, int w) {
  const std::int64_t kk = k;
  return isqrt_floor(kk * kk * kk * w) + k;
}

std::int64_t zarankiewicz_cap(int k, int w) {
  const std::int64_t kk = k;
  const std::int64_t x = kk * kk * kk * w;
  std::int64_t s = isqrt_floor(x);
  if (s * s < x) ++s;
  return s + k;
}

double w_limited_count_bound(int k, int w) {
  const double base = 2.0 * std::numbers::e * std::sqrt(static_cast<double>(k) / w);
  const double exponent = std::pow(k, 1.5) * std::sqrt(static_cast<double>(w)) + k;
  return std::pow(base, exponent);
}

std::uint64_t for_each_w_limited(int k, int w, std::int64_t ones_cap,
                                 const std::function<bool(std::span<const RowBits>)>& visit) {
  if (k < 1 || k > 8) throw std::invalid_argument("enumeration supports 1 <= k <= 8");
  if (w < 0) throw std::invalid_argument("w must be nonnegative");
  const RowBits limit = RowBits{1} << k;
  std::vector<RowBits> rows(k, 0);
  std::uint64_t visited = 0;
  bool stop = false;

  auto recurse = [&](auto&& self, int r, std::int64_t ones) -> void {
    if (r == k) {
      ++visited;
      if (!visit(rows)) stop = true;
      return;
    }
    for (RowBits v = 0; v < limit && !stop; ++v) {
      const int pc = std::popcount(v);
      if (ones + pc > ones_cap) continue;
      bool ok = true;
      for (int q = 0; q < r && ok; ++q) ok = std::popcount(v & rows[q]) <= w;
      if (!ok) continue;
      rows[r] = v;
      self(self, r + 1, ones + pc);
    }
  };
  recurse(recurse, 0, 0);
  return visited;
}

std::vector<BinaryMatrix> enumerate_w_limited(int k, int w, std::int64_t ones_cap) {
  std::vector<BinaryMatrix> out;
  for_each_w_limited(k, w, ones_cap, [&](std::span<const RowBits> rows) {
    out.push_back(rows_to_matrix(rows, k));
    return true;
  });
  return out;
}

bool i_compatible(RowBits v, int i, const PartialBinaryMatrix& b, const WildcardMatrix& a) {
  if (!wildcard_eq(a.raw(i, i), std::popcount(v))) return false;
  for (int j = 0; j < b.rows(); ++j) {
    if (j == i || b.is_null(j)) continue;
    if (std::popcount(v & b.row(j)) != a.raw(i, j)) return false;
  }
  return true;
}

namespace {

// extend_basis over a cached list of filled rows.
ExtendResult extend_impl(const WildcardMatrix& a, PartialBinaryMatrix b) {
  const int n = b.rows();
  const RowBits limit = RowBits{1} << b.cols();
  std::vector<int> filled;
  filled.reserve(n);
  for (int j = 0; j < n; ++j)
    if (!b.is_null(j)) filled.push_back(j);

  for (int i = 0; i < n; ++i) {
    if (!b.is_null(i)) continue;
    const int diag = a.raw(i, i);
    bool placed = false;
    for (RowBits v = 0; v < limit; ++v) {
      if (!wildcard_eq(diag, std::popcount(v))) continue;
      bool ok = true;
      for (int j : filled) {
        if (std::popcount(v & b.row(j)) != a.raw(i, j)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        b.set(i, v);
        filled.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) return {std::move(b), i};
  }
  return {std::move(b), n};
}

// One column per unit of edge weight plus singleton columns for leftover
// vertex weight. Empty when that needs more than k columns.
std::optional<BinaryMatrix> trivial_decomposition(const WildcardMatrix& a, int k) {
  const int n = static_cast<int>(a.size());
  std::int64_t columns = 0;
  std::vector<int> deficit(n, 0);
  for (int u = 0; u < n; ++u) {
    std::int64_t incident = 0;
    for (int v = 0; v < n; ++v)
      if (v != u) incident += a.raw(u, v);
    for (int v = u + 1; v < n; ++v) columns += a.raw(u, v);
    if (a.raw(u, u) != kWildcard) {
      if (a.raw(u, u) < incident) return std::nullopt;
      deficit[u] = static_cast<int>(a.raw(u, u) - incident);
      columns += deficit[u];
    }
  }
  if (columns > k) return std::nullopt;
  BinaryMatrix b = BinaryMatrix::Zero(n, k);
  Eigen::Index col = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int c = 0; c < a.raw(u, v); ++c, ++col) b(u, col) = b(v, col) = 1;
  for (int u = 0; u < n; ++u)
    for (int c = 0; c < deficit[u]; ++c, ++col) b(u, col) = 1;
  return b;
}

// Shared stop conditions for one search worker.
struct StopGuard {
  const SolverOptions& opts;
  const std::atomic<bool>& halt;
  // Deterministic parallel mode: give up once a smaller first row has succeeded.
  const std::atomic<RowBits>* best_first = nullptr;
  RowBits current_first = 0;
  std::uint32_t tick = 0;
  bool timed_out = false;

  bool should_stop() {
    if (timed_out || halt.load(std::memory_order_relaxed)) return true;
    if (best_first && best_first->load(std::memory_order_relaxed) < current_first) return true;
    if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) {
      timed_out = true;
      return true;
    }
    if (opts.deadline && (++tick & 0xFF) == 0 && std::chrono::steady_clock::now() >= *opts.deadline) {
      timed_out = true;
      return true;
    }
    return false;
  }
};

struct Found {
  BinaryMatrix b;
  std::vector<int> basis_rows;
};

// Basis search. Every basis matrix sharing the rows already placed behaves
// identically in the basis-growing loop up to that point, so the loop over
// complete w-limited matrices is walked as a prefix tree: a node with b rows
// stands for all matrices starting with those rows. Visiting children in
// increasing order reproduces the row-major lexicographic matrix order.
class BasisSearch {
public:
  BasisSearch(const WildcardMatrix& a, int k, int w, std::int64_t cap, StopGuard& guard)
      : a_(a), n_(static_cast<int>(a.size())), k_(k), w_(w), cap_(cap), guard_(guard) {}

  // Subtree of matrices whose first row is `first`.
  std::optional<Found> run_first_row(RowBits first) {
    PartialBinaryMatrix basis(n_, k_);
    return try_child(basis, 0, 0, first);
  }

  SolveStats stats;

private:
  std::optional<Found> try_child(const PartialBinaryMatrix& basis, int target, std::int64_t ones, RowBits v) {
    const int pc = std::popcount(v);
    if (ones + pc > cap_) return std::nullopt;
    for (RowBits r : prefix_)
      if (std::popcount(v & r) > w_) return std::nullopt;
    ++stats.nodes;
    // A trailing zero row pads to the same matrix as the parent prefix.
    if (v != 0 || prefix_.empty()) ++stats.candidates;
    // Loop 2 stops for every matrix with this prefix.
    if (!i_compatible(v, target, basis, a_)) return std::nullopt;

    PartialBinaryMatrix grown = basis;
    grown.set(target, v);
    ++stats.extend_calls;
    ExtendResult ext = extend_impl(a_, grown);
    placed_.push_back(target);
    prefix_.push_back(v);
    assert(basis_matches_prefix(grown));
    std::optional<Found> result;
    if (ext.stuck_row == n_) {
      result = Found{ext.matrix.to_matrix(), placed_};
    } else if (static_cast<int>(prefix_.size()) < k_) {
      result = descend(grown, ext.stuck_row, ones + pc);
    }
    prefix_.pop_back();
    placed_.pop_back();
    return result;
  }

  std::optional<Found> descend(const PartialBinaryMatrix& basis, int target, std::int64_t ones) {
    const RowBits limit = RowBits{1} << k_;
    for (RowBits v = 0; v < limit; ++v) {
      if (guard_.should_stop()) return std::nullopt;
      if (auto found = try_child(basis, target, ones, v)) return found;
    }
    return std::nullopt;
  }

  bool basis_matches_prefix(const PartialBinaryMatrix& basis) const {
    if (basis.filled_count() != static_cast<int>(placed_.size())) return false;
    for (std::size_t t = 0; t < placed_.size(); ++t)
      if (basis.is_null(placed_[t]) || basis.row(placed_[t]) != prefix_[t]) return false;
    return true;
  }

  const WildcardMatrix& a_;
  int n_;
  int k_;
  int w_;
  std::int64_t cap_;
  StopGuard& guard_;
  std::vector<RowBits> prefix_;
  std::vector<int> placed_;
};

// Runs the basis-growing loop once per complete candidate matrix.
std::optional<Found> literal_search(const WildcardMatrix& a, int k, int w, std::int64_t cap,
                                    StopGuard& guard, SolveStats& stats) {
  const int n = static_cast<int>(a.size());
  std::optional<Found> result;
  for_each_w_limited(k, w, cap, [&](std::span<const RowBits> p) {
    if (guard.should_stop()) return false;
    ++stats.candidates;
    ++stats.nodes;
    PartialBinaryMatrix basis(n, k);
    std::vector<int> placed;
    int target = 0;
    for (int b = 0; b < k && i_compatible(p[b], target, basis, a); ++b) {
      basis.set(target, p[b]);
      placed.push_back(target);
      ++stats.extend_calls;
      ExtendResult ext = extend_impl(a, basis);
      if (ext.stuck_row == n) {
        result = Found{ext.matrix.to_matrix(), placed};
        return false;
      }
      target = ext.stuck_row;
    }
    return true;
  });
  return result;
}

void accumulate(SolveStats& into, const SolveStats& from) {
  into.candidates += from.candidates;
  into.nodes += from.nodes;
  into.extend_calls += from.extend_calls;
}

}  // namespace

ExtendResult extend_basis(const WildcardMatrix& a, PartialBinaryMatrix b) {
  if (b.rows() != a.size()) throw std::invalid_argument("dimension mismatch between A and B");
  return extend_impl(a, std::move(b));
}

BsdSolution solve_bsddw(const WildcardMatrix& a, int k, const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(a.size());
  const int w = a.max_weight();
  BsdSolution out;
  auto finish = [&](SolveStatus status) {
    out.status = status;
    out.stats.wall = std::chrono::steady_clock::now() - start;
    if (status == SolveStatus::kYes && !verify_bsd(a, out.b, k))
      throw std::logic_error("solver produced an invalid decomposition");
    return out;
  };

  if (k < 0) throw std::invalid_argument("negative budget k");
  if (n == 0 || w == 0) {
    out.b = BinaryMatrix::Zero(n, k);
    return finish(SolveStatus::kYes);
  }
  // Any positive entry needs at least one column; entry w needs w shared columns.
  if (k == 0 || w > k) return finish(SolveStatus::kNo);

  // Rows with no positive entry can be zero in some solution, and the basis
  // walk needs its first placed row to be nonzero in every solution. Solve
  // without them and put zero rows back.
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    bool zero = a.raw(i, i) == kWildcard || a.raw(i, i) == 0;
    for (int j = 0; j < n && zero; ++j) zero = i == j || a.raw(i, j) == 0;
    if (!zero) active.push_back(i);
  }
  if (static_cast<int>(active.size()) < n) {
    const auto m = static_cast<Eigen::Index>(active.size());
    IntMatrix sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = a.raw(active[i], active[j]);
    BsdSolution inner = solve_bsddw(WildcardMatrix::from_raw(std::move(sub)), k, opts);
    out.stats = inner.stats;
    if (inner.status != SolveStatus::kYes) return finish(inner.status);
    out.b = BinaryMatrix::Zero(n, k);
    for (Eigen::Index i = 0; i < m; ++i) out.b.row(active[i]) = inner.b.row(i);
    for (int r : inner.basis_rows) out.basis_rows.push_back(active[r]);
    return finish(SolveStatus::kYes);
  }
  if (k > n) {
    if (auto trivial = trivial_decomposition(a, k)) {
      out.b = std::move(*trivial);
      return finish(SolveStatus::kYes);
    }
  }
  if (k > kMaxSolverColumns) throw std::out_of_range("budget k too large for the basis search");

  const std::int64_t cap = zarankiewicz_cap(k, w);
  std::atomic<bool> halt{false};

  if (opts.literal_enumeration) {
    StopGuard guard{opts, halt};
    auto found = literal_search(a, k, w, cap, guard, out.stats);
    if (found) {
      out.b = std::move(found->b);
      out.basis_rows = std::move(found->basis_rows);
      return finish(SolveStatus::kYes);
    }
    return finish(guard.timed_out ? SolveStatus::kTimeout : SolveStatus::kNo);
  }

  const RowBits first_rows = RowBits{1} << k;
  const int threads = std::max(1, opts.threads);

  if (threads == 1) {
    StopGuard guard{opts, halt};
    BasisSearch search(a, k, w, cap, guard);
    for (RowBits v = 0; v < first_rows && !guard.should_stop(); ++v) {
      if (auto found = search.run_first_row(v)) {
        out.b = std::move(found->b);
        out.basis_rows = std::move(found->basis_rows);
        out.stats = search.stats;
        return finish(SolveStatus::kYes);
      }
    }
    out.stats = search.stats;
    return finish(guard.timed_out ? SolveStatus::kTimeout : SolveStatus::kNo);
  }

  // Parallel: workers pull first rows from a shared counter. In deterministic
  // mode the solution with the smallest first row wins, which is the one the
  // sequential walk would return.
  std::atomic<RowBits> next{0};
  std::atomic<RowBits> best_first{std::numeric_limits<RowBits>::max()};
  std::atomic<bool> any_timeout{false};
  std::mutex result_mutex;
  std::optional<Found> best;

  auto worker = [&] {
    StopGuard guard{opts, halt};
    if (opts.deterministic) guard.best_first = &best_first;
    BasisSearch search(a, k, w, cap, guard);
    for (;;) {
      const RowBits v = next.fetch_add(1);
      if (v >= first_rows || halt.load() || v > best_first.load()) break;
      guard.current_first = v;
      std::optional<Found> found = search.run_first_row(v);
      if (guard.timed_out) {
        any_timeout = true;
        halt = true;
        break;
      }
      if (found) {
        std::lock_guard lock(result_mutex);
        if (v < best_first.load()) {
          best_first = v;
          best = std::move(found);
        }
        if (!opts.deterministic) halt = true;
      }
    }
    std::lock_guard lock(result_mutex);
    accumulate(out.stats, search.stats);
  };

  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();

  if (best) {
    out.b = std::move(best->b);
    out.basis_rows = std::move(best->basis_rows);
    return finish(SolveStatus::kYes);
  }
  return finish(any_timeout ? SolveStatus::kTimeout : SolveStatus::kNo);
}

WecpSolution solve_wecp(const AwecpInstance& inst, const WecpOptions& opts) {
  auto [a, k] = awecp_to_bsddw(inst);
  WecpSolution out;
  LiftInfo lift;
  WildcardMatrix reduced;
  if (opts.use_kernel) {
    KernelResult kr = kernelize(a, k);
    if (kr.verdict == KernelVerdict::kNo) {
      out.kernel_rejected = true;
      out.status = SolveStatus::kNo;
      return out;
    }
    reduced = std::move(kr.kernel);
    lift = std::move(kr.lift);
  } else {
    reduced = a;
    lift = identity_lift(inst.vertex_count);
  }
  out.kernel_size = static_cast<int>(reduced.size());
  BsdSolution bsd = solve_bsddw(reduced, k, opts.solver);
  out.status = bsd.status;
  out.stats = bsd.stats;
  if (bsd.status != SolveStatus::kYes) return out;
  const BinaryMatrix lifted = lift_solution(bsd.b, lift);
  if (!verify_bsd(a, lifted, k)) throw std::logic_error("lifted solution does not verify");
  out.partition = matrix_to_cliques(lifted);
  return out;
}

}  // namespace wecp
