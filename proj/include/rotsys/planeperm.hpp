#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotsys/perm.hpp"

namespace rotsys {

// Pair (s, pi) with s a permutation having k >= 1 cycles (one per face) and
// pi arbitrary, on a shared ground set. The diagonal D = s∘pi^{-1} is
// preserved by every rearrangement this module performs.
class KCycPlanePermutation {
 public:
  KCycPlanePermutation(Permutation s, Permutation pi) : s_(std::move(s)), pi_(std::move(pi)) {
    if (!same_ground(s_, pi_)) throw error("plane permutation: s and pi must share a ground set");
    if (s_.size() == 0) throw error("plane permutation: empty ground set");
    k_ = s_.cycle_count();
  }

  const Permutation& s() const { return s_; }
  const Permutation& pi() const { return pi_; }
  int k() const { return k_; }
  int size() const { return s_.size(); }

  Permutation diagonal() const { return compose(s_, pi_.inverse()); }

  // Euler relation for the triple (s, pi, D): 2 - 2g = l(s) + l(pi) + l(D) - n.
  // Refuses disconnected input rather than reporting a meaningless number.
  int genus() const {
    if (!transitive(s_, pi_)) throw error("genus: <s, pi> is not transitive (disconnected object)");
    int rhs = s_.cycle_count() + pi_.cycle_count() + diagonal().cycle_count() - size();
    int twog = 2 - rhs;
    if (twog < 0 || twog % 2 != 0) throw invariant_error("genus: Euler relation gave a bad value");
    return twog / 2;
  }

 private:
  Permutation s_;
  Permutation pi_;
  int k_ = 0;
};

// The one-face case: s is a single n-cycle. Normalized so the written cycle
// of s starts at its minimum label.
class PlanePermutation {
 public:
  PlanePermutation(Permutation s, Permutation pi) : s_(std::move(s)), pi_(std::move(pi)) {
    if (!same_ground(s_, pi_)) throw error("plane permutation: s and pi must share a ground set");
    if (!s_.is_single_cycle()) throw error("plane permutation: s must be a single cycle");
  }

  const Permutation& s() const { return s_; }
  const Permutation& pi() const { return pi_; }
  int size() const { return s_.size(); }

  Permutation diagonal() const { return compose(s_, pi_.inverse()); }

  // The cycle of s written from its minimum label: s_0, s_1, ..., s_{n-1}.
  std::vector<int> s_sequence() const { return s_.cycles().front(); }

  KCycPlanePermutation as_kcyc() const { return KCycPlanePermutation(s_, pi_); }

  friend bool operator==(const PlanePermutation&, const PlanePermutation&) = default;

 private:
  Permutation s_;
  Permutation pi_;
};

// chi_h: rearrange the diagonal pairs of (s, pi) according to a sequence h,
// which must be a permutation of {1, ..., n-1} (otherwise the result is not a
// bijection). s^h = (s_0, s_{h_1}, ..., s_{h_{n-1}}); pi^h is determined by
// keeping the diagonal fixed: pi^h = D^{-1}∘s^h.
inline PlanePermutation apply_sequence(const PlanePermutation& pp, const std::vector<int>& h) {
  const int n = pp.size();
  if (static_cast<int>(h.size()) != n - 1) throw error("apply_sequence: h must have length n-1");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : h) {
    if (v < 1 || v > n - 1 || seen[static_cast<size_t>(v)])
      throw error("apply_sequence: h is not a permutation of 1..n-1");
    seen[static_cast<size_t>(v)] = true;
  }
  const auto seq = pp.s_sequence();
  std::vector<int> new_seq;
  new_seq.reserve(seq.size());
  new_seq.push_back(seq[0]);
  for (int v : h) new_seq.push_back(seq[static_cast<size_t>(v)]);
  Permutation new_s = Permutation::from_cycles({new_seq});
  Permutation new_pi = compose(pp.diagonal().inverse(), new_s);
  return PlanePermutation(std::move(new_s), std::move(new_pi));
}

// Block transpose: h = (i, j, j+1, l) swaps the segments [s_i..s_j] and
// [s_{j+1}..s_l] of the s-sequence, 0 < i <= j < l < n.
inline PlanePermutation transpose(const PlanePermutation& pp, int i, int j, int l) {
  const int n = pp.size();
  if (!(0 < i && i <= j && j < l && l < n)) throw error("transpose: need 0 < i <= j < l < n");
  std::vector<int> h;
  h.reserve(static_cast<size_t>(n - 1));
  for (int r = 1; r < i; ++r) h.push_back(r);
  for (int r = j + 1; r <= l; ++r) h.push_back(r);
  for (int r = i; r <= j; ++r) h.push_back(r);
  for (int r = l + 1; r < n; ++r) h.push_back(r);
  return apply_sequence(pp, h);
}

// The six pi-cycle configurations of {s_{i-1}, s_j, s_l}. Case 1 merges three
// cycles (count -2), case 2 splits one into three (count +2), cases 3-6 leave
// the count unchanged but are distinguished because the local dual moves
// treat them differently.
enum class TransposeCase { case1, case2, case3, case4, case5, case6 };

inline int transpose_cycle_delta(TransposeCase c) {
  switch (c) {
    case TransposeCase::case1: return -2;
    case TransposeCase::case2: return +2;
    default: return 0;
  }
}

inline const char* transpose_case_name(TransposeCase c) {
  switch (c) {
    case TransposeCase::case1: return "case1";
    case TransposeCase::case2: return "case2";
    case TransposeCase::case3: return "case3";
    case TransposeCase::case4: return "case4";
    case TransposeCase::case5: return "case5";
    case TransposeCase::case6: return "case6";
  }
  return "?";
}

namespace detail {

// Walk the pi-cycle starting after x; report which of {b, c} shows up first,
// or that neither does (distinct cycles).
inline int first_met(const Permutation& pi, int x, int b, int c) {
  int y = pi.apply(x);
  while (y != x) {
    if (y == b) return 0;
    if (y == c) return 1;
    y = pi.apply(y);
  }
  return -1;
}

}  // namespace detail

inline TransposeCase classify_transpose(const PlanePermutation& pp, int i, int j, int l) {
  const int n = pp.size();
  if (!(0 < i && i <= j && j < l && l < n)) throw error("classify_transpose: need 0 < i <= j < l < n");
  const auto seq = pp.s_sequence();
  const int x = seq[static_cast<size_t>(i - 1)];
  const int y = seq[static_cast<size_t>(j)];
  const int z = seq[static_cast<size_t>(l)];
  const auto& pi = pp.pi();
  int from_x = detail::first_met(pi, x, y, z);
  if (from_x == 0) {
    // x and y share a cycle, y first.
    return detail::first_met(pi, x, z, z) == 0 ? TransposeCase::case3 : TransposeCase::case4;
  }
  if (from_x == 1) {
    // x and z share a cycle, z first.
    return detail::first_met(pi, x, y, y) == 0 ? TransposeCase::case2 : TransposeCase::case6;
  }
  // x alone: do y and z share a cycle?
  int from_y = detail::first_met(pi, y, z, z);
  if (from_y == 0) return TransposeCase::case5;
  return TransposeCase::case1;
}

// Rooted equivalence: a single alpha with alpha(1) = 1 conjugating both
// coordinates. Aligning the s-cycles at label 1 forces alpha.
inline bool equivalent(const PlanePermutation& a, const PlanePermutation& b) {
  if (!a.s().contains(1) || !b.s().contains(1)) throw error("equivalent: ground sets must contain label 1");
  if (a.s().labels() != b.s().labels()) throw error("equivalent: ground-set mismatch");
  auto rotate_to_1 = [](std::vector<int> seq) {
    auto it = std::find(seq.begin(), seq.end(), 1);
    std::rotate(seq.begin(), it, seq.end());
    return seq;
  };
  auto sa = rotate_to_1(a.s_sequence());
  auto sb = rotate_to_1(b.s_sequence());
  std::map<int, int> img;
  for (size_t i = 0; i < sa.size(); ++i) img[sb[i]] = sa[i];
  Permutation alpha = Permutation::from_map(img);
  return conjugate(alpha, b.pi()) == a.pi();
}

// Two-line text format, exactly the two-row representation:
//   s: a0 a1 ... a{n-1}
//   pi: b0 b1 ... b{n-1}     (pi(a_i) = b_i)
inline PlanePermutation parse_two_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<int> svals, pvals;
  int lineno = 0;
  auto read_row = [&](const std::string& tag, std::vector<int>& out) {
    while (std::getline(in, line)) {
      ++lineno;
      size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      if (line.compare(start, tag.size(), tag) != 0)
        throw parse_error(lineno, static_cast<int>(start) + 1, "expected '" + tag + "' row");
      std::istringstream row(line.substr(start + tag.size()));
      int v;
      while (row >> v) out.push_back(v);
      return;
    }
    throw parse_error(lineno, 1, "missing '" + tag + "' row");
  };
  read_row("s:", svals);
  read_row("pi:", pvals);
  if (svals.size() != pvals.size()) throw parse_error("two-line rows differ in length");
  if (svals.empty()) throw parse_error("two-line form is empty");
  Permutation s = Permutation::from_cycles({svals});
  Permutation pi = Permutation::from_images(svals, pvals);
  return PlanePermutation(std::move(s), std::move(pi));
}

inline std::string emit_two_line(const PlanePermutation& pp) {
  const auto seq = pp.s_sequence();
  std::string top = "s:", bottom = "pi:";
  for (int x : seq) {
    top += ' ' + std::to_string(x);
    bottom += ' ' + std::to_string(pp.pi().apply(x));
  }
  return top + '\n' + bottom + '\n';
}

}  // namespace rotsys
