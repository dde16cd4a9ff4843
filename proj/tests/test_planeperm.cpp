#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rotsys/planeperm.hpp"

using namespace rotsys;

namespace {

PlanePermutation four_edge_unicellular() {
  // two-row form: top 1..8, bottom 1 6 7 8 3 4 5 2
  auto s = Permutation::parse_cycles("(1 2 3 4 5 6 7 8)");
  auto pi = Permutation::from_images({1, 2, 3, 4, 5, 6, 7, 8}, {1, 6, 7, 8, 3, 4, 5, 2});
  return PlanePermutation(s, pi);
}

PlanePermutation random_pp(int n, std::mt19937_64& rng) {
  std::vector<int> labels, rest, images;
  for (int i = 1; i <= n; ++i) labels.push_back(i);
  rest.assign(labels.begin() + 1, labels.end());
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<int> cyc = {1};
  cyc.insert(cyc.end(), rest.begin(), rest.end());
  images = labels;
  std::shuffle(images.begin(), images.end(), rng);
  return PlanePermutation(Permutation::from_cycles({cyc}), Permutation::from_images(labels, images));
}

std::vector<int> random_h(int n, std::mt19937_64& rng) {
  std::vector<int> h;
  for (int i = 1; i < n; ++i) h.push_back(i);
  std::shuffle(h.begin(), h.end(), rng);
  return h;
}

}  // namespace

TEST_CASE("diagonal") {
  auto pp = four_edge_unicellular();
  CHECK(pp.diagonal() == Permutation::parse_cycles("(1 2)(3 6)(4 7)(5 8)"));

  auto s = Permutation::parse_cycles("(1 2 3)");
  CHECK(PlanePermutation(s, s).diagonal().is_identity());

  // vertex pair with non-contiguous labels
  auto sv = Permutation::parse_cycles("(8 11 14 16 19)");
  auto piv = Permutation::from_images({8, 11, 14, 16, 19}, {14, 16, 19, 8, 11});
  CHECK(PlanePermutation(sv, piv).diagonal() == Permutation::parse_cycles("(8 19 16 14 11)"));
}

TEST_CASE("apply_sequence") {
  auto pp = four_edge_unicellular();
  std::vector<int> identity_h = {1, 2, 3, 4, 5, 6, 7};
  CHECK(apply_sequence(pp, identity_h) == pp);

  SECTION("diagonal preserved for random h") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      auto q = random_pp(8, rng);
      auto h = random_h(8, rng);
      CHECK(apply_sequence(q, h).diagonal() == q.diagonal());
    }
  }

  SECTION("block-form h reproduces transpose") {
    std::mt19937_64 rng(12);
    auto q = random_pp(8, rng);
    int i = 2, j = 4, l = 6;
    std::vector<int> h = {1, 5, 6, 2, 3, 4, 7};  // 1, (j+1..l), (i..j), (l+1..n-1)
    CHECK(apply_sequence(q, h) == transpose(q, i, j, l));
  }

  SECTION("h must be a permutation of 1..n-1") {
    CHECK_THROWS_AS(apply_sequence(pp, {1, 2, 3, 4, 5, 6}), error);
    CHECK_THROWS_AS(apply_sequence(pp, {1, 2, 3, 4, 5, 6, 6}), error);
    CHECK_THROWS_AS(apply_sequence(pp, {0, 2, 3, 4, 5, 6, 7}), error);
  }
}

TEST_CASE("transpose moves exactly three images") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto pp = random_pp(8, rng);
    auto seq = pp.s_sequence();
    const int n = pp.size();
    for (int i = 1; i < n; ++i)
      for (int j = i; j < n - 1; ++j)
        for (int l = j + 1; l < n; ++l) {
          auto moved = transpose(pp, i, j, l);
          // the three-point images
          CHECK(moved.pi().apply(seq[i - 1]) == pp.pi().apply(seq[j]));
          CHECK(moved.pi().apply(seq[j]) == pp.pi().apply(seq[l]));
          CHECK(moved.pi().apply(seq[l]) == pp.pi().apply(seq[i - 1]));
          // everything else untouched
          for (int r = 0; r < n; ++r)
            if (r != i - 1 && r != j && r != l)
              CHECK(moved.pi().apply(seq[r]) == pp.pi().apply(seq[r]));
          CHECK(moved.diagonal() == pp.diagonal());
          int delta = moved.pi().cycle_count() - pp.pi().cycle_count();
          CHECK((delta == -2 || delta == 0 || delta == 2));
        }
    if (trial >= 3) break;  // three random instances cover all (i,j,l); keep it quick
  }
}

TEST_CASE("classify_transpose predicts the cycle-count change") {
  // exhaustive for n <= 6: every pi, every legal triple
  for (int n = 4; n <= 6; ++n) {
    std::vector<int> labels, images;
    for (int i = 1; i <= n; ++i) labels.push_back(i);
    std::vector<int> cyc = labels;
    auto s = Permutation::from_cycles({cyc});
    images = labels;
    std::sort(images.begin(), images.end());
    bool saw_case[6] = {false, false, false, false, false, false};
    do {
      PlanePermutation pp(s, Permutation::from_images(labels, images));
      for (int i = 1; i < n; ++i)
        for (int j = i; j < n - 1; ++j)
          for (int l = j + 1; l < n; ++l) {
            auto c = classify_transpose(pp, i, j, l);
            saw_case[static_cast<int>(c)] = true;
            int observed = transpose(pp, i, j, l).pi().cycle_count() - pp.pi().cycle_count();
            CHECK(transpose_cycle_delta(c) == observed);
          }
    } while (std::next_permutation(images.begin(), images.end()));
    if (n == 6)
      for (bool b : saw_case) CHECK(b);
  }
  // seeded random sweeps at n = 7, 8
  std::mt19937_64 rng(14);
  for (int n : {7, 8}) {
    for (int trial = 0; trial < 60; ++trial) {
      auto pp = random_pp(n, rng);
      for (int i = 1; i < n; ++i)
        for (int j = i; j < n - 1; ++j)
          for (int l = j + 1; l < n; ++l) {
            auto c = classify_transpose(pp, i, j, l);
            int observed = transpose(pp, i, j, l).pi().cycle_count() - pp.pi().cycle_count();
            CHECK(transpose_cycle_delta(c) == observed);
          }
    }
  }
}

TEST_CASE("specific case shapes") {
  // three distinct pi-cycles -> case 1, merge
  auto s = Permutation::parse_cycles("(1 2 3 4 5 6)");
  auto pi1 = Permutation::parse_cycles("(1 2)(3 4)(5 6)");
  PlanePermutation pp1(s, pi1);
  // choose i, j, l with s_{i-1}=1, s_j=3, s_l=5 in distinct cycles
  CHECK(classify_transpose(pp1, 1, 2, 4) == TransposeCase::case1);

  // single cycle ordered (x .. y .. z): case 3
  auto pi3 = Permutation::parse_cycles("(1 3 5)", {1, 2, 3, 4, 5, 6});
  CHECK(classify_transpose(PlanePermutation(s, pi3), 1, 2, 4) == TransposeCase::case3);

  // single cycle ordered (x .. z .. y): case 2, split
  auto pi2 = Permutation::parse_cycles("(1 5 3)", {1, 2, 3, 4, 5, 6});
  CHECK(classify_transpose(PlanePermutation(s, pi2), 1, 2, 4) == TransposeCase::case2);
}

TEST_CASE("case1 and case2 are mutually inverse on the same block split") {
  std::mt19937_64 rng(15);
  int seen = 0;
  for (int trial = 0; trial < 400 && seen < 40; ++trial) {
    auto pp = random_pp(8, rng);
    const int n = 8;
    for (int i = 1; i < n && seen < 40; ++i)
      for (int j = i; j < n - 1; ++j)
        for (int l = j + 1; l < n; ++l) {
          if (classify_transpose(pp, i, j, l) != TransposeCase::case1) continue;
          auto once = transpose(pp, i, j, l);
          // the inverse move swaps the blocks back: j' = i + l - j - 1
          int jp = i + l - j - 1;
          CHECK(classify_transpose(once, i, jp, l) == TransposeCase::case2);
          CHECK(transpose(once, i, jp, l) == pp);
          ++seen;
          break;
        }
  }
  CHECK(seen >= 40);
}

TEST_CASE("equivalence") {
  auto pp = four_edge_unicellular();
  CHECK(equivalent(pp, pp));

  SECTION("conjugating by alpha fixing 1 preserves the class") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 100; ++trial) {
      auto q = random_pp(8, rng);
      std::vector<int> rest = {2, 3, 4, 5, 6, 7, 8};
      std::shuffle(rest.begin(), rest.end(), rng);
      std::vector<int> labels = {1, 2, 3, 4, 5, 6, 7, 8}, images = {1};
      images.insert(images.end(), rest.begin(), rest.end());
      auto alpha = Permutation::from_images(labels, images);
      PlanePermutation other(conjugate(alpha, q.s()), conjugate(alpha, q.pi()));
      CHECK(equivalent(q, other));
      CHECK(equivalent(other, q));
    }
  }

  SECTION("same s different pi is inequivalent") {
    auto s = Permutation::parse_cycles("(1 2 3 4)");
    PlanePermutation a(s, Permutation::parse_cycles("(1 2)", {1, 2, 3, 4}));
    PlanePermutation b(s, Permutation::parse_cycles("(1 3)", {1, 2, 3, 4}));
    CHECK_FALSE(equivalent(a, b));
  }

  SECTION("label 1 required") {
    auto s = Permutation::parse_cycles("(2 3 4)");
    PlanePermutation a(s, Permutation::identity({2, 3, 4}));
    CHECK_THROWS_AS(equivalent(a, a), error);
  }
}

TEST_CASE("genus of k-cyc plane permutations") {
  auto pp = four_edge_unicellular();
  CHECK(pp.as_kcyc().genus() == 1);

  auto s = Permutation::parse_cycles("(1 2 3)");
  CHECK(KCycPlanePermutation(s, s).genus() == 0);

  SECTION("disconnected input refused") {
    auto s2 = Permutation::parse_cycles("(1 2)(3 4)");
    auto pi2 = Permutation::parse_cycles("(1 2)(3 4)");
    CHECK_THROWS_AS(KCycPlanePermutation(s2, pi2).genus(), error);
  }
}

TEST_CASE("two-line format round trip") {
  std::string text = "s: 1 2 3 4 5 6 7 8\npi: 1 6 7 8 3 4 5 2\n";
  auto pp = parse_two_line(text);
  CHECK(pp == four_edge_unicellular());
  CHECK(emit_two_line(pp) == text);
  CHECK_THROWS_AS(parse_two_line("s: 1 2 3\npi: 1 2\n"), parse_error);
  CHECK_THROWS_AS(parse_two_line("pi: 1 2\n"), parse_error);
}
