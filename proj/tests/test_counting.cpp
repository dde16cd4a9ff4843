#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "rotsys/counting.hpp"
#include "rotsys/planeperm.hpp"

using namespace rotsys;

TEST_CASE("brute-force oracle, pinned values") {
  CountingContext ctx;
  CHECK(ctx.brute_force_p(1, Partition::parse("5"), 5) == 8);
  CHECK(ctx.brute_force_p(1, Partition::parse("3 1"), 4) == 3);
  CHECK(ctx.brute_force_p(3, Partition::parse("3 1"), 4) == 3);
  CHECK(ctx.brute_force_p(1, Partition::parse("3"), 3) == 1);
  // identity rotation side: only pi = id pairs with an n-cycle diagonal
  for (int n : {3, 4, 5}) {
    Partition ones(std::vector<int>(static_cast<size_t>(n), 1));
    Partition full(std::vector<int>{n});
    CHECK(ctx.brute_force_f(ones, full, n) == 1);
    CHECK(ctx.brute_force_f(full, ones, n) == factorial(n - 1));
  }
}

TEST_CASE("oracle internal consistency") {
  CountingContext ctx;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& lambda : all_partitions(n)) {
      BigCount total = 0;
      for (int k = 1; k <= n; ++k) {
        BigCount pk = ctx.brute_force_p(k, lambda, n);
        total += pk;
        // p is the row sum of f over types with k cycles
        BigCount fsum = 0;
        for (const auto& eta : all_partitions(n))
          if (eta.ell() == k) fsum += ctx.brute_force_f(eta, lambda, n);
        CHECK(pk == fsum);
      }
      CHECK(total == factorial(n - 1));
    }
  }
}

TEST_CASE("recurrence equals brute force for n <= 6") {
  CountingContext ctx;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& lambda : all_partitions(n)) {
      for (const auto& eta : all_partitions(n))
        CHECK(ctx.f_count(eta, lambda, n) == ctx.brute_force_f(eta, lambda, n));
      for (int k = 1; k <= n; ++k)
        CHECK(ctx.p_count(k, lambda, n) == ctx.brute_force_p(k, lambda, n));
    }
  }
}

TEST_CASE("p_count pinned examples and structure") {
  CountingContext ctx;
  CHECK(ctx.p_count(1, Partition::parse("5"), 5) == 8);
  CHECK(ctx.p_count(1, Partition::parse("1 3"), 4) == 3);
  CHECK(ctx.p_count(3, Partition::parse("1 3"), 4) == 3);

  SECTION("parity obstruction") {
    // n + 1 - k - l(lambda) odd -> zero
    CHECK(ctx.p_count(2, Partition::parse("5"), 5) == 0);
    CHECK(ctx.p_count(1, Partition::parse("4"), 4) == 0);
    CHECK(ctx.f_count(Partition::parse("2 1"), Partition::parse("3"), 3) == 0);
  }

  SECTION("support ends exactly at max_k") {
    for (int n = 2; n <= 7; ++n)
      for (const auto& lambda : all_partitions(n)) {
        int m = max_k(lambda, n);
        CHECK(m == n + 1 - lambda.ell());
        CHECK(ctx.p_count(m, lambda, n) > 0);
        for (int k = m + 1; k <= n; ++k) CHECK(ctx.p_count(k, lambda, n) == 0);
      }
    CHECK(max_k(Partition::parse("2 2"), 4) == 3);
  }
}

TEST_CASE("closed form for one-cycle counts") {
  CHECK(p1_closed_form(Partition::parse("5"), 5) == 8);
  CHECK(p1_closed_form(Partition::parse("1 1 1"), 3) == 2);
  CHECK(p1_closed_form(Partition::parse("1 3"), 4) == 3);
  CHECK(p1_closed_form(Partition::parse("2 2"), 4) == 2);
  CountingContext ctx;
  for (int k = 1; k <= 6; ++k)
    for (const auto& lambda : all_partitions(k))
      CHECK(p1_closed_form(lambda, k) == ctx.p_count(1, lambda, k));
}

TEST_CASE("bounds for the one-cycle count") {
  auto [lo, hi] = p1_bounds(5, 0);
  CHECK(lo == BigRatio(48, 7));
  CHECK(hi == BigRatio(1392, 164));
  CHECK(lo <= 8);
  CHECK(BigRatio(8) <= hi);

  auto [lo1, hi1] = p1_bounds(1, 1);
  CHECK(lo1 == 1);
  CHECK(hi1 >= 1);

  CountingContext ctx;
  for (int k = 1; k <= 6; ++k)
    for (const auto& lambda : all_partitions(k)) {
      BigCount p1 = ctx.p_count(1, lambda, k);
      if (p1 == 0) continue;
      auto [l, h] = p1_bounds(k, lambda.multiplicity(1));
      CHECK(l <= BigRatio(p1));
      CHECK(BigRatio(p1) <= h);
    }
}

TEST_CASE("reversed-rotation closed form") {
  CHECK(reversed_rotation_preserve_count(5) == 8);
  CHECK(reversed_rotation_preserve_count(4) == 2);
  CHECK(reversed_rotation_preserve_count(6) == 36);

  // cross-check on the actual reversed-rotation vertex
  CountingContext ctx;
  for (int d = 1; d <= 7; ++d) {
    std::vector<int> labels, rev;
    for (int i = 1; i <= d; ++i) labels.push_back(i);
    rev.push_back(1);
    for (int i = d; i >= 2; --i) rev.push_back(i);
    auto s = Permutation::from_cycles({labels});
    auto pi = Permutation::from_cycles({rev});
    Partition lambda = PlanePermutation(s, pi).diagonal().cycle_type();
    CHECK(ctx.brute_force_p(1, lambda, d) == reversed_rotation_preserve_count(d));
  }
}

TEST_CASE("factorizations of an even permutation into two full cycles") {
  CountingContext ctx;
  CHECK(ctx.even_cycle_factorizations(Permutation::identity({1, 2, 3, 4})) == 6);
  CHECK(ctx.even_cycle_factorizations(Permutation::parse_cycles("(1 2 3 4 5)")) == 8);
  CHECK(ctx.even_cycle_factorizations(Permutation::parse_cycles("(1 2)", {1, 2, 3, 4})) == 0);

  SECTION("raw-pair normalization against direct enumeration") {
    // independent oracle: enumerate both cycles for n = 4
    auto w = Permutation::parse_cycles("(1 2)(3 4)");
    std::vector<std::vector<int>> cycles;
    std::vector<int> rest = {2, 3, 4};
    std::sort(rest.begin(), rest.end());
    long count = 0;
    do {
      std::vector<int> c1 = {1, rest[0], rest[1], rest[2]};
      std::vector<int> d1 = {1, rest[0], rest[1], rest[2]};
      auto p1 = Permutation::from_cycles({c1});
      std::vector<int> rest2 = {2, 3, 4};
      do {
        std::vector<int> c2 = {1, rest2[0], rest2[1], rest2[2]};
        auto p2 = Permutation::from_cycles({c2});
        if (compose(p1, p2) == w) ++count;
      } while (std::next_permutation(rest2.begin(), rest2.end()));
    } while (std::next_permutation(rest.begin(), rest.end()));
    CHECK(ctx.even_cycle_factorizations(w) == count);
  }
}

TEST_CASE("budget refusal is explicit") {
  CountingContext ctx;  // default oracle limit 9
  CHECK_THROWS_AS(ctx.brute_force_f(Partition::parse("12"), Partition::parse("12"), 12), budget_error);
  CHECK_THROWS_AS(ctx.even_cycle_factorizations(Permutation::parse_cycles("(1 2 3 4 5 6 7 8 9 10 11 12)")),
                  budget_error);
}

TEST_CASE("concurrent queries agree") {
  CountingContext ctx;
  std::vector<std::thread> threads;
  std::vector<BigCount> results(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&ctx, &results, t] { results[static_cast<size_t>(t)] = ctx.p_count(1, Partition::parse("6"), 6); });
  for (auto& th : threads) th.join();
  for (const auto& r : results) CHECK(r == results[0]);
  CHECK(results[0] == ctx.brute_force_p(1, Partition::parse("6"), 6));
}
