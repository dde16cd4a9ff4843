#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "rotsys/budget.hpp"
#include "rotsys/numeric.hpp"
#include "rotsys/parallel.hpp"
#include "rotsys/partition.hpp"
#include "rotsys/perm.hpp"

namespace rotsys {

namespace detail {

// Cycle lengths of a 0-based image vector, sorted non-increasing.
inline std::vector<int> cycle_lengths(const std::vector<int>& img, std::vector<char>& visited) {
  const int n = static_cast<int>(img.size());
  visited.assign(static_cast<size_t>(n), 0);
  std::vector<int> lens;
  for (int i = 0; i < n; ++i) {
    if (visited[static_cast<size_t>(i)]) continue;
    int len = 0, x = i;
    while (!visited[static_cast<size_t>(x)]) {
      visited[static_cast<size_t>(x)] = 1;
      x = img[static_cast<size_t>(x)];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

inline bool is_one_cycle(const std::vector<int>& img) {
  const int n = static_cast<int>(img.size());
  int x = 0, steps = 0;
  do {
    x = img[static_cast<size_t>(x)];
    ++steps;
  } while (x != 0 && steps <= n);
  return steps == n;
}

// Canonical 0-based permutation of a given type: consecutive cycles.
inline std::vector<int> canonical_of_type(const Partition& lambda) {
  std::vector<int> img(static_cast<size_t>(lambda.n()));
  int start = 0;
  for (int len : lambda.parts()) {
    for (int i = 0; i < len; ++i) img[static_cast<size_t>(start + i)] = start + (i + 1) % len;
    start += len;
  }
  return img;
}

struct PartitionTypeIndex {
  std::vector<Partition> list;        // all partitions of n, sorted
  std::map<std::vector<int>, int> by_lens;  // key: non-increasing lengths

  explicit PartitionTypeIndex(int n) {
    list = all_partitions(n);
    std::sort(list.begin(), list.end());
    for (size_t i = 0; i < list.size(); ++i) by_lens[list[i].parts()] = static_cast<int>(i);
  }

  int id(const std::vector<int>& lens) const { return by_lens.at(lens); }
  int id(const Partition& p) const { return by_lens.at(p.parts()); }
  size_t size() const { return list.size(); }
};

}  // namespace detail

// Exact counting of one-face factorizations. Two independent routes live
// here: the recurrences (f_count / p_count, memoized, base cases supplied by
// a fixed-full-cycle sweep) and the brute-force oracles (brute_force_f /
// brute_force_p, a fixed-diagonal sweep over all n-cycles). They enumerate
// different spaces, so agreement between them is a genuine cross-check at
// every genus, including the base layer.
//
// Semantics of the public counts: fix one permutation D of cycle type
// lambda on an n-element set. Then
//   f_count(eta, lambda, n)  = #{ pi of type eta : D∘pi is an n-cycle }
//   p_count(k, lambda, n)    = #{ pi with k cycles : D∘pi is an n-cycle }
// so that summing p_count over k gives (n-1)!, the number of cyclic
// arrangements of n half edges around a vertex. The recurrences hold for the
// fixed-full-cycle quantities instead (count pairs with s = (12...n) fixed);
// the two differ by the exact factor z_lambda/n, applied on the way out.
class CountingContext {
 public:
  explicit CountingContext(Budget budget = {}, int jobs = 1) : budget_(budget), jobs_(jobs < 1 ? 1 : jobs) {}

  const Budget& budget() const { return budget_; }
  int jobs() const { return jobs_; }

  BigCount f_count(const Partition& eta, const Partition& lambda, int n) {
    if (eta.n() != n || lambda.n() != n) throw error("f_count: partition sizes must equal n");
    BigCount ft = f_tilde(eta, lambda, n);
    return exact_div(ft * lambda.centralizer_order(), n, "f_count");
  }

  BigCount p_count(int k, const Partition& lambda, int n) {
    if (lambda.n() != n) throw error("p_count: |lambda| must equal n");
    if (k < 1 || k > n) return 0;
    BigCount pt = p_tilde(k, lambda, n);
    return exact_div(pt * lambda.centralizer_order(), n, "p_count");
  }

  BigCount brute_force_f(const Partition& eta, const Partition& lambda, int n) {
    if (eta.n() != n || lambda.n() != n) throw error("brute_force_f: partition sizes must equal n");
    budget_.check_oracle_n(n);
    const auto& row = diagonal_row(lambda, n);
    detail::PartitionTypeIndex idx(n);
    return BigCount(row[static_cast<size_t>(idx.id(eta))]);
  }

  BigCount brute_force_p(int k, const Partition& lambda, int n) {
    if (lambda.n() != n) throw error("brute_force_p: |lambda| must equal n");
    budget_.check_oracle_n(n);
    if (k < 1 || k > n) return 0;
    const auto& row = diagonal_row(lambda, n);
    detail::PartitionTypeIndex idx(n);
    BigCount total = 0;
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx.list[i].ell() == k) total += row[i];
    return total;
  }

  // Ordered pairs (c1, c2) of n-cycles with c1∘c2 = w. Zero for odd w (a
  // product of two n-cycles is always even) — degenerate, not an error.
  BigCount even_cycle_factorizations(const Permutation& w) {
    const int n = w.size();
    if (n == 0) return 0;
    budget_.check_oracle_n(n);
    if (!w.is_even()) return 0;
    // Relabel onto 0..n-1.
    const auto& labels = w.labels();
    std::vector<int> wimg(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      int y = w.images()[static_cast<size_t>(i)];
      wimg[static_cast<size_t>(i)] =
          static_cast<int>(std::lower_bound(labels.begin(), labels.end(), y) - labels.begin());
    }
    if (n == 1) return 1;  // c1 = c2 = the 1-cycle
    std::uint64_t total = count_cycles_with(
        n, [&](const std::vector<int>& c1, std::vector<int>& scratch) {
          // c2 = c1^{-1}∘w must be a single n-cycle.
          for (int x = 0; x < n; ++x) scratch[static_cast<size_t>(c1[static_cast<size_t>(x)])] = x;
          int x = 0, steps = 0;
          do {
            x = scratch[static_cast<size_t>(wimg[static_cast<size_t>(x)])];
            ++steps;
          } while (x != 0 && steps <= n);
          return steps == n;
        });
    return BigCount(total);
  }

 private:
  // --- fixed-full-cycle sweep: base cases for the recurrences -------------
  struct FullCycleTable {
    detail::PartitionTypeIndex idx;
    // counts[type(pi)][type(s∘pi^{-1})] over all pi in S_n, s = (12...n).
    std::vector<std::vector<std::uint64_t>> counts;
    explicit FullCycleTable(int n) : idx(n) {}
  };

  const FullCycleTable& full_cycle_table(int n) {
    budget_.check_oracle_n(n);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = full_tables_.find(n);
      if (it != full_tables_.end()) return *it->second;
    }
    auto table = std::make_unique<FullCycleTable>(n);
    const detail::PartitionTypeIndex& idx = table->idx;
    const size_t np = idx.size();
    using Matrix = std::vector<std::vector<std::uint64_t>>;
    // Chunk by the image of 0; each chunk enumerates (n-1)! permutations.
    auto chunks = run_chunked<Matrix>(
        static_cast<std::uint64_t>(n), jobs_, 1, [&](std::uint64_t c0, std::uint64_t) {
          Matrix local(np, std::vector<std::uint64_t>(np, 0));
          const int c = static_cast<int>(c0);
          std::vector<int> rest;
          for (int v = 0; v < n; ++v)
            if (v != c) rest.push_back(v);
          std::vector<int> pi(static_cast<size_t>(n)), d(static_cast<size_t>(n));
          std::vector<char> visited;
          do {
            pi[0] = c;
            for (int i = 1; i < n; ++i) pi[static_cast<size_t>(i)] = rest[static_cast<size_t>(i - 1)];
            // D = s∘pi^{-1} with s(x) = x+1 mod n: D(pi(x)) = x+1 mod n.
            for (int x = 0; x < n; ++x) d[static_cast<size_t>(pi[static_cast<size_t>(x)])] = (x + 1) % n;
            int ia = idx.id(detail::cycle_lengths(pi, visited));
            int ib = idx.id(detail::cycle_lengths(d, visited));
            ++local[static_cast<size_t>(ia)][static_cast<size_t>(ib)];
          } while (std::next_permutation(rest.begin(), rest.end()));
          return local;
        });
    table->counts.assign(np, std::vector<std::uint64_t>(np, 0));
    for (const auto& m : chunks)
      for (size_t a = 0; a < np; ++a)
        for (size_t b = 0; b < np; ++b) table->counts[a][b] += m[a][b];
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = full_tables_.emplace(n, std::move(table));
    return *it->second;
  }

  // --- fixed-diagonal sweep: the brute-force oracle ------------------------
  // row[id(eta)] = #{ n-cycles s : type(D^{-1}∘s) = eta } for the canonical D
  // of type lambda; equivalently #{ pi of type eta : D∘pi an n-cycle }.
  const std::vector<std::uint64_t>& diagonal_row(const Partition& lambda, int n) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = diag_rows_.find(lambda);
      if (it != diag_rows_.end()) return it->second;
    }
    const detail::PartitionTypeIndex idx(n);
    std::vector<int> d = detail::canonical_of_type(lambda);
    std::vector<int> dinv(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) dinv[static_cast<size_t>(d[static_cast<size_t>(x)])] = x;
    std::vector<std::uint64_t> row(idx.size(), 0);
    for_each_cycle(n, jobs_, [&](const std::vector<int>& s, std::vector<std::uint64_t>& local,
                                 std::vector<char>& visited) {
      thread_local std::vector<int> pi;
      pi.assign(static_cast<size_t>(n), 0);
      for (int x = 0; x < n; ++x)
        pi[static_cast<size_t>(x)] = dinv[static_cast<size_t>(s[static_cast<size_t>(x)])];
      ++local[static_cast<size_t>(idx.id(detail::cycle_lengths(pi, visited)))];
    }, row);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = diag_rows_.emplace(lambda, std::move(row));
    return it->second;
  }

  // Enumerate all n-cycles on [0, n), chunked by the successor of 0.
  template <typename Fn>
  void for_each_cycle(int n, int jobs, Fn fn, std::vector<std::uint64_t>& accum) {
    if (n == 1) {
      std::vector<int> s = {0};
      std::vector<std::uint64_t> local(accum.size(), 0);
      std::vector<char> visited;
      fn(s, local, visited);
      for (size_t i = 0; i < accum.size(); ++i) accum[i] += local[i];
      return;
    }
    using Row = std::vector<std::uint64_t>;
    auto chunks = run_chunked<Row>(
        static_cast<std::uint64_t>(n - 1), jobs, 1, [&](std::uint64_t c0, std::uint64_t) {
          Row local(accum.size(), 0);
          const int first = static_cast<int>(c0) + 1;  // successor of 0
          std::vector<int> rest;
          for (int v = 1; v < n; ++v)
            if (v != first) rest.push_back(v);
          std::vector<int> s(static_cast<size_t>(n));
          std::vector<char> visited;
          do {
            // cycle (0, first, rest...)
            int prev = 0;
            s[0] = first;
            prev = first;
            for (int v : rest) {
              s[static_cast<size_t>(prev)] = v;
              prev = v;
            }
            s[static_cast<size_t>(prev)] = 0;
            fn(s, local, visited);
          } while (std::next_permutation(rest.begin(), rest.end()));
          return local;
        });
    for (const auto& local : chunks)
      for (size_t i = 0; i < accum.size(); ++i) accum[i] += local[i];
  }

  // Count n-cycles c1 satisfying a predicate; used by the factorization count.
  template <typename Pred>
  std::uint64_t count_cycles_with(int n, Pred pred) {
    std::vector<std::uint64_t> accum(1, 0);
    for_each_cycle(n, jobs_, [&](const std::vector<int>& c1, std::vector<std::uint64_t>& local,
                                 std::vector<char>&) {
      thread_local std::vector<int> scratch;
      scratch.assign(static_cast<size_t>(n), 0);
      if (pred(c1, scratch)) ++local[0];
    }, accum);
    return accum[0];
  }

  // --- recurrences ----------------------------------------------------------
  // f_tilde(a, b, n): pairs with s = (12...n) fixed, pi of type a, diagonal of
  // type b. Symmetric in (a, b). Recursion strictly decreases
  // 2g = n + 1 - l(a) - l(b); the 2g = 0 layer comes from the sweep table.
  BigCount f_tilde(const Partition& a, const Partition& b, int n) {
    const int twog = n + 1 - a.ell() - b.ell();
    if (twog < 0 || twog % 2 != 0) return 0;
    const Partition& lo = std::min(a, b);
    const Partition& hi = std::max(a, b);
    FKey key{n, lo, hi};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = f_memo_.find(key);
      if (it != f_memo_.end()) return it->second;
    }
    BigCount value;
    if (twog == 0) {
      const auto& table = full_cycle_table(n);
      value = BigCount(table.counts[static_cast<size_t>(table.idx.id(a))][static_cast<size_t>(table.idx.id(b))]);
    } else {
      BigCount sum = 0;
      for (int i = 1; 2 * i + 1 <= n; ++i) {
        for (const auto& [mu, kap] : splits(a, 2 * i + 1)) sum += kap * f_tilde(mu, b, n);
        for (const auto& [mu, kap] : splits(b, 2 * i + 1)) sum += kap * f_tilde(mu, a, n);
      }
      value = exact_div(sum, twog, "f recurrence");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = f_memo_.emplace(std::move(key), std::move(value));
    return it->second;
  }

  BigCount p_tilde(int k, const Partition& lambda, int n) {
    if (k < 1 || k > n) return 0;
    const int twog = n + 1 - k - lambda.ell();
    if (twog < 0 || twog % 2 != 0) return 0;
    PKey key{n, k, lambda};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = p_memo_.find(key);
      if (it != p_memo_.end()) return it->second;
    }
    BigCount value;
    if (twog == 0) {
      const auto& table = full_cycle_table(n);
      BigCount sum = 0;
      const size_t ib = static_cast<size_t>(table.idx.id(lambda));
      for (size_t ia = 0; ia < table.idx.size(); ++ia)
        if (table.idx.list[ia].ell() == k) sum += table.counts[ia][ib];
      value = sum;
    } else {
      BigCount sum = 0;
      for (int i = 1; k + 2 * i <= n; ++i)
        sum += binomial(k + 2 * i, k - 1) * p_tilde(k + 2 * i, lambda, n);
      for (int i = 1; 2 * i + 1 <= n; ++i)
        for (const auto& [mu, kap] : splits(lambda, 2 * i + 1)) sum += kap * p_tilde(k, mu, n);
      value = exact_div(sum, twog, "p recurrence");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = p_memo_.emplace(std::move(key), std::move(value));
    return it->second;
  }

  struct FKey {
    int n;
    Partition a, b;
    auto operator<=>(const FKey&) const = default;
  };
  struct PKey {
    int n;
    int k;
    Partition lambda;
    auto operator<=>(const PKey&) const = default;
  };

  Budget budget_;
  int jobs_;
  std::mutex mutex_;
  std::map<int, std::unique_ptr<FullCycleTable>> full_tables_;
  std::map<Partition, std::vector<std::uint64_t>> diag_rows_;
  std::map<FKey, BigCount> f_memo_;
  std::map<PKey, BigCount> p_memo_;
};

// Largest k with p_count(k, lambda, n) nonzero.
inline int max_k(const Partition& lambda, int n) { return n + 1 - lambda.ell(); }

// Exact evaluation of the closed form for p_count(1, lambda, k):
//   sum_{i=0}^{k-1} i!(k-1-i)!/k * sum_{<r>} C(a_1 - 1, r_1) C(a_2, r_2) ...
//   C(a_i, r_i) (-1)^{r_2 + r_4 + ...},
// <r> over non-negative solutions of sum_j j*r_j = i, with the generalized
// binomial (so a_1 = 0 yields C(-1, r) = (-1)^r).
inline BigCount p1_closed_form(const Partition& lambda, int k) {
  if (lambda.n() != k) throw error("p1_closed_form: |lambda| must equal k");
  std::vector<long long> a(static_cast<size_t>(k + 1), 0);
  for (int part : lambda.parts()) ++a[static_cast<size_t>(part)];
  BigCount total = 0;
  for (int i = 0; i <= k - 1; ++i) {
    BigCount inner = 0;
    // enumerate r_1..r_i with sum j*r_j = i
    std::vector<int> r(static_cast<size_t>(i + 1), 0);
    auto rec = [&](auto&& self, int j, int remaining) -> void {
      if (j > i || remaining == 0) {
        if (remaining != 0) return;
        BigCount term = 1;
        int even_sum = 0;
        for (int jj = 1; jj <= i; ++jj) {
          int rr = r[static_cast<size_t>(jj)];
          if (rr == 0) continue;
          long long top = (jj == 1) ? a[1] - 1 : a[static_cast<size_t>(jj)];
          term *= generalized_binomial(top, rr);
          if (jj % 2 == 0) even_sum += rr;
        }
        if (even_sum % 2 != 0) term = -term;
        inner += term;
        return;
      }
      for (int rr = 0; rr * j <= remaining; ++rr) {
        r[static_cast<size_t>(j)] = rr;
        self(self, j + 1, remaining - rr * j);
      }
      r[static_cast<size_t>(j)] = 0;
    };
    rec(rec, 1, i);
    total += factorial(i) * factorial(k - 1 - i) * inner;
  }
  return exact_div(total, k, "p1_closed_form");
}

// Exact rational bounds for p_count(1, lambda, k) in terms of k and the
// number a1 of fixed points of the diagonal:
//   2(k-1)!/(k - a1 + 2) <= p_1 <= 2(k-1)!/(k - a1 + 19/29).
inline std::pair<BigRatio, BigRatio> p1_bounds(int k, int a1) {
  if (k < 1) throw error("p1_bounds: k must be positive");
  BigCount numer = 2 * factorial(k - 1);
  BigRatio lower(numer, BigCount(k - a1 + 2));
  BigRatio upper(numer * 29, BigCount(29 * (k - a1) + 19));
  return {lower, upper};
}

// Number of cyclic rearrangements that preserve the face count for a vertex
// whose current rotation is the reverse of its face order:
//   d odd:          2(d-1)!/(d+1)
//   d ≡ 0 (mod 4):  2(d-1)!/(d+1) * (1 - 1/C(d, d/2))
//   d even, 4∤d:    2(d-1)!/(d+1) * (1 + 1/C(d, d/2))
// Always an integer.
inline BigCount reversed_rotation_preserve_count(int d) {
  if (d < 1) throw error("reversed_rotation_preserve_count: d must be positive");
  BigRatio r(2 * factorial(d - 1), BigCount(d + 1));
  if (d % 2 == 0) {
    BigRatio c(1, binomial(d, d / 2));
    r *= (d % 4 == 0) ? (BigRatio(1) - c) : (BigRatio(1) + c);
  }
  if (denominator(r) != 1) throw invariant_error("reversed_rotation_preserve_count: non-integer value");
  return numerator(r);
}

}  // namespace rotsys
