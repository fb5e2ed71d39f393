#include "wecp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <vector>

namespace wecp {
namespace {

using Row = std::uint64_t;

// Vertices u, v are interchangeable when swapping them maps A onto itself.
// Within a class, rows may be assumed nondecreasing.
std::vector<int> previous_interchangeable(const WildcardMatrix& a) {
  const int n = static_cast<int>(a.size());
  auto interchangeable = [&](int u, int v) {
    if (a.raw(u, u) != a.raw(v, v)) return false;
    for (int x = 0; x < n; ++x)
      if (x != u && x != v && a.raw(u, x) != a.raw(v, x)) return false;
    return true;
  };
  // Bucket by diagonal and off-diagonal value multiset, then verify exactly.
  std::map<std::pair<int, std::vector<int>>, std::vector<std::vector<int>>> buckets;
  std::vector<int> prev(n, -1);
  for (int u = 0; u < n; ++u) {
    std::vector<int> values;
    for (int x = 0; x < n; ++x)
      if (x != u) values.push_back(a.raw(u, x));
    std::sort(values.begin(), values.end());
    auto& classes = buckets[{a.raw(u, u), std::move(values)}];
    bool joined = false;
    for (auto& cls : classes) {
      if (interchangeable(cls.front(), u)) {
        prev[u] = cls.back();
        cls.push_back(u);
        joined = true;
        break;
      }
    }
    if (!joined) classes.push_back({u});
  }
  return prev;
}

class RowSearch {
public:
  RowSearch(const WildcardMatrix& a, int k, bool break_vertex_symmetry, bool count_all,
            std::optional<std::chrono::steady_clock::time_point> deadline)
      : a_(a),
        deadline_(deadline),
        n_(static_cast<int>(a.size())),
        k_(k),
        words_(k >= 6 ? (std::size_t{1} << (k - 6)) : 1),
        count_all_(count_all),
        rows_(n_, 0) {
    if (break_vertex_symmetry) prev_ = previous_interchangeable(a);
    else prev_.assign(n_, -1);
    // Tied adjacent column pairs, indexed by the bit position of the left column.
    for (int p = 1; p < k_; ++p) all_pairs_ |= Row{1} << p;
  }

  void run() {
    std::vector<Row> domains(static_cast<std::size_t>(n_) * words_, 0);
    const Row limit = Row{1} << k_;
    for (int t = 0; t < n_; ++t) {
      for (Row v = 0; v < limit; ++v)
        if (wildcard_eq(a_.raw(t, t), std::popcount(v))) set_bit(domains, t, v);
      if (empty(domains, t)) return;
    }
    recurse(0, domains, all_pairs_);
  }

  bool found() const { return solutions_ > 0; }
  std::uint64_t solutions() const { return solutions_; }
  const std::vector<Row>& solution() const { return solution_; }

private:
  void set_bit(std::vector<Row>& d, int t, Row v) const { d[t * words_ + (v >> 6)] |= Row{1} << (v & 63); }
  bool empty(const std::vector<Row>& d, int t) const {
    for (std::size_t q = 0; q < words_; ++q)
      if (d[t * words_ + q] != 0) return false;
    return true;
  }

  // Keeps only vectors x in t's domain with popcount(x & v) == target.
  bool filter(std::vector<Row>& d, int t, Row v, int target) const {
    bool any = false;
    for (std::size_t q = 0; q < words_; ++q) {
      Row word = d[t * words_ + q];
      Row kept = 0;
      while (word != 0) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        const Row x = (Row{q} << 6) | static_cast<Row>(bit);
        if (std::popcount(x & v) == target) kept |= Row{1} << bit;
      }
      d[t * words_ + q] = kept;
      any = any || kept != 0;
    }
    return any;
  }

  // Returns true when the search should stop.
  bool recurse(int u, const std::vector<Row>& domains, Row tied) {
    if (deadline_ && (++tick_ & 0x3FF) == 0 && std::chrono::steady_clock::now() >= *deadline_)
      throw OracleTimeout();
    if (u == n_) {
      if (solutions_++ == 0) solution_ = rows_;
      return !count_all_;
    }
    const Row lower = prev_[u] >= 0 ? rows_[prev_[u]] : 0;
    std::vector<Row> next;
    for (std::size_t q = 0; q < words_; ++q) {
      Row word = domains[u * words_ + q];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        const Row v = (Row{q} << 6) | static_cast<Row>(bit);
        if (v < lower) continue;
        // Columns stay sorted: a tied pair may not get (1, 0).
        if ((v & ~(v << 1)) & tied) continue;
        const Row next_tied = tied & ~(~v & (v << 1));

        next = domains;
        bool alive = true;
        for (int t = u + 1; t < n_ && alive; ++t) alive = filter(next, t, v, a_.raw(u, t));
        if (!alive) continue;
        rows_[u] = v;
        if (recurse(u + 1, next, next_tied)) return true;
      }
    }
    return false;
  }

  const WildcardMatrix& a_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint32_t tick_ = 0;
  int n_;
  int k_;
  std::size_t words_;
  bool count_all_;
  std::vector<int> prev_;
  std::vector<Row> rows_;
  std::vector<Row> solution_;
  Row all_pairs_ = 0;
  std::uint64_t solutions_ = 0;
};

void check_guard(const WildcardMatrix& a, int k, const OracleOptions& opts) {
  if (k < 0) throw std::invalid_argument("negative budget k");
  if (k > opts.max_columns || a.size() * k > opts.max_cells) throw OracleGuardError();
}

BinaryMatrix to_matrix(const std::vector<Row>& rows, int k) {
  BinaryMatrix b = BinaryMatrix::Zero(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k; ++j) b(static_cast<Eigen::Index>(i), j) = (rows[i] >> (k - 1 - j)) & 1U;
  return b;
}

}  // namespace

std::optional<BinaryMatrix> oracle_solve(const WildcardMatrix& a, int k, const OracleOptions& opts) {
  check_guard(a, k, opts);
  RowSearch search(a, k, /*break_vertex_symmetry=*/true, /*count_all=*/false, opts.deadline);
  search.run();
  if (!search.found()) return std::nullopt;
  return to_matrix(search.solution(), k);
}

std::uint64_t oracle_count(const WildcardMatrix& a, int k, const OracleOptions& opts) {
  check_guard(a, k, opts);
  RowSearch search(a, k, /*break_vertex_symmetry=*/false, /*count_all=*/true, opts.deadline);
  search.run();
  return search.solutions();
}

std::uint64_t count_w_limited(int k, int w) {
  if (k < 1 || k > 4) throw OracleGuardError();
  const std::uint64_t total = std::uint64_t{1} << (k * k);
  const Row row_mask = (Row{1} << k) - 1;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < total; ++m) {
    bool ok = true;
    for (int r = 0; r < k && ok; ++r)
      for (int s = r + 1; s < k && ok; ++s)
        ok = std::popcount(((m >> (r * k)) & row_mask) & ((m >> (s * k)) & row_mask)) <= w;
    if (ok) ++count;
  }
  return count;
}

}  // namespace wecp
