#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "rotsys/errors.hpp"
#include "rotsys/partition.hpp"

namespace rotsys {

enum class Parity { even, odd };

// Bijection on an explicit finite set of positive integer labels. The ground
// set need not be contiguous: vertex-local objects keep the original
// half-edge labels. Values are immutable after construction.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    std::vector<int> img = labels;
    return Permutation(std::move(labels), std::move(img));
  }

  // labels[i] |-> images[i]; validates that this is a bijection.
  static Permutation from_images(std::vector<int> labels, std::vector<int> images) {
    if (labels.size() != images.size()) throw error("permutation: label/image length mismatch");
    std::vector<size_t> order(labels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return labels[a] < labels[b]; });
    std::vector<int> lab(labels.size()), img(labels.size());
    for (size_t i = 0; i < order.size(); ++i) {
      lab[i] = labels[order[i]];
      img[i] = images[order[i]];
    }
    return Permutation(std::move(lab), std::move(img));
  }

  static Permutation from_map(const std::map<int, int>& images) {
    std::vector<int> lab, img;
    lab.reserve(images.size());
    img.reserve(images.size());
    for (auto [x, y] : images) {
      lab.push_back(x);
      img.push_back(y);
    }
    return Permutation(std::move(lab), std::move(img));
  }

  // Cycle form; labels of `ground` not mentioned in any cycle are fixed
  // points. Without an explicit ground the cycles themselves define it.
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles) {
    std::vector<int> ground;
    for (const auto& c : cycles) ground.insert(ground.end(), c.begin(), c.end());
    return from_cycles(cycles, std::move(ground));
  }

  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, std::vector<int> ground) {
    std::sort(ground.begin(), ground.end());
    if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
      throw error("permutation: duplicate ground label");
    std::map<int, int> img;
    for (int x : ground) img[x] = x;
    for (const auto& c : cycles) {
      if (c.empty()) throw error("permutation: empty cycle");
      for (size_t i = 0; i < c.size(); ++i) {
        auto it = img.find(c[i]);
        if (it == img.end()) throw error("permutation: cycle label " + std::to_string(c[i]) + " outside ground");
        if (it->second != c[i]) throw error("permutation: label " + std::to_string(c[i]) + " appears twice");
        it->second = c[(i + 1) % c.size()];
      }
    }
    return from_map(img);
  }

  // Text form "(1 2)(3 6)(4 7)"; fixed points may be omitted when a ground is
  // supplied and are always printed by str().
  static Permutation parse_cycles(const std::string& text) {
    auto cycles = parse_cycle_lists(text);
    return from_cycles(cycles);
  }

  static Permutation parse_cycles(const std::string& text, std::vector<int> ground) {
    auto cycles = parse_cycle_lists(text);
    return from_cycles(cycles, std::move(ground));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& images() const { return images_; }

  bool contains(int x) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
    return it != labels_.end() && *it == x;
  }

  int apply(int x) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
    if (it == labels_.end() || *it != x)
      throw error("permutation: label " + std::to_string(x) + " not in ground set");
    return images_[static_cast<size_t>(it - labels_.begin())];
  }

  int operator()(int x) const { return apply(x); }

  // Canonical cycle form: each cycle rotated so its minimum label leads,
  // cycles sorted by that minimum. Fixed points included.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> done(labels_.size(), false);
    for (size_t i = 0; i < labels_.size(); ++i) {
      if (done[i]) continue;
      std::vector<int> cyc;
      int x = labels_[i];
      do {
        size_t ix = index_of(x);
        done[ix] = true;
        cyc.push_back(x);
        x = images_[ix];
      } while (x != labels_[i]);
      out.push_back(std::move(cyc));
    }
    return out;
  }

  Partition cycle_type() const {
    std::vector<int> lens;
    for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
    return Partition(std::move(lens));
  }

  int cycle_count() const {
    int k = 0;
    std::vector<bool> done(labels_.size(), false);
    for (size_t i = 0; i < labels_.size(); ++i) {
      if (done[i]) continue;
      ++k;
      int x = labels_[i];
      do {
        size_t ix = index_of(x);
        done[ix] = true;
        x = images_[ix];
      } while (x != labels_[i]);
    }
    return k;
  }

  Parity parity() const { return (size() - cycle_count()) % 2 == 0 ? Parity::even : Parity::odd; }
  bool is_even() const { return parity() == Parity::even; }

  bool is_identity() const { return labels_ == images_; }
  bool is_single_cycle() const { return size() > 0 && cycle_count() == 1; }

  bool is_fixed_point_free_involution() const {
    for (size_t i = 0; i < labels_.size(); ++i) {
      int y = images_[i];
      if (y == labels_[i]) return false;
      if (apply(y) != labels_[i]) return false;
    }
    return size() > 0;
  }

  Permutation inverse() const {
    std::vector<int> lab = images_;
    std::vector<int> img = labels_;
    return from_images(std::move(lab), std::move(img));
  }

  // Restriction to an orbit-closed subset is a special case; in general maps
  // x to the first iterate of x that lands back in `subset`. This is what
  // restricting a face cycle to the half edges of a vertex means.
  Permutation induced_on(std::vector<int> subset) const {
    std::sort(subset.begin(), subset.end());
    std::map<int, int> img;
    for (int x : subset) {
      int y = apply(x);
      while (!std::binary_search(subset.begin(), subset.end(), y)) y = apply(y);
      img[x] = y;
    }
    return from_map(img);
  }

  std::string str() const {
    std::string out;
    for (const auto& c : cycles()) {
      out += '(';
      for (size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c[i]);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation(std::vector<int> labels, std::vector<int> images)
      : labels_(std::move(labels)), images_(std::move(images)) {
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
      throw error("permutation: duplicate ground label");
    std::vector<int> check = images_;
    std::sort(check.begin(), check.end());
    if (check != labels_) throw error("permutation: images are not a bijection of the ground set");
  }

  size_t index_of(int x) const {
    return static_cast<size_t>(std::lower_bound(labels_.begin(), labels_.end(), x) - labels_.begin());
  }

  static std::vector<std::vector<int>> parse_cycle_lists(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw parse_error("expected '(' in cycle form at offset " + std::to_string(i));
      ++i;
      std::vector<int> cyc;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw parse_error("expected label in cycle form at offset " + std::to_string(i));
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          ++i;
        }
        cyc.push_back(v);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
      }
      if (i == text.size()) throw parse_error("unterminated cycle in cycle form");
      ++i;  // ')'
      if (cyc.empty()) throw parse_error("empty cycle in cycle form");
      cycles.push_back(std::move(cyc));
      skip_ws();
    }
    return cycles;
  }

  std::vector<int> labels_;
  std::vector<int> images_;
};

inline bool same_ground(const Permutation& p, const Permutation& q) { return p.labels() == q.labels(); }

// x |-> p(q(x)). Right factor applied first; this convention is fixed
// repo-wide (D = s∘pi^{-1}, faces = alpha∘beta).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (!same_ground(p, q)) throw error("compose: ground-set mismatch");
  std::vector<int> img;
  img.reserve(q.images().size());
  for (int y : q.images()) img.push_back(p.apply(y));
  return Permutation::from_images(q.labels(), std::move(img));
}

// a p a^{-1}.
inline Permutation conjugate(const Permutation& a, const Permutation& p) {
  if (!same_ground(a, p)) throw error("conjugate: ground-set mismatch");
  return compose(compose(a, p), a.inverse());
}

// Do <a, b> act transitively on the (shared) ground set?
inline bool transitive(const Permutation& a, const Permutation& b) {
  if (!same_ground(a, b)) throw error("transitive: ground-set mismatch");
  if (a.size() == 0) return true;
  const auto& labels = a.labels();
  std::vector<bool> seen(labels.size(), false);
  std::vector<int> stack = {labels[0]};
  auto index = [&](int x) {
    return static_cast<size_t>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin());
  };
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : {a.apply(x), b.apply(x)}) {
      size_t iy = index(y);
      if (!seen[iy]) {
        seen[iy] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == labels.size();
}

}  // namespace rotsys
