#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rotsys/errors.hpp"
#include "rotsys/numeric.hpp"

namespace rotsys {

// Integer partition, stored non-increasing. Doubles as a cycle type: parts
// are cycle lengths, ell() the number of cycles.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p <= 0) throw error("partition parts must be positive");
    std::sort(parts_.rbegin(), parts_.rend());
    for (int p : parts_) n_ += p;
  }

  // Accepts "3 1 1" (plain parts) or "1^2 3^1" (value^multiplicity).
  static Partition parse(const std::string& text) {
    std::vector<int> parts;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      auto caret = tok.find('^');
      try {
        if (caret == std::string::npos) {
          parts.push_back(std::stoi(tok));
        } else {
          int value = std::stoi(tok.substr(0, caret));
          int mult = std::stoi(tok.substr(caret + 1));
          if (mult < 0) throw parse_error("negative multiplicity in partition: " + tok);
          for (int i = 0; i < mult; ++i) parts.push_back(value);
        }
      } catch (const std::invalid_argument&) {
        throw parse_error("bad partition token: " + tok);
      } catch (const std::out_of_range&) {
        throw parse_error("partition token out of range: " + tok);
      }
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  int ell() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  int multiplicity(int value) const {
    int m = 0;
    for (int p : parts_) m += (p == value);
    return m;
  }

  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (int p : parts_) ++m[p];
    return m;
  }

  // Centralizer order z = prod_i i^{a_i} a_i! of any permutation of this type.
  BigCount centralizer_order() const {
    BigCount z = 1;
    for (auto [value, mult] : multiplicities()) {
      for (int i = 0; i < mult; ++i) z *= value;
      z *= factorial(mult);
    }
    return z;
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  std::string str_exponent() const {
    std::string out;
    for (auto [value, mult] : multiplicities()) {
      if (!out.empty()) out += ' ';
      out += std::to_string(value) + "^" + std::to_string(mult);
    }
    return out;
  }

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

// All partitions of n, deterministic order.
inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, std::max(n, 1));
  if (n == 0) out = {Partition{}};
  return out;
}

// Partitions of `total` into exactly `count` positive parts.
inline std::vector<std::vector<int>> partitions_into_parts(int total, int count) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int slots, int maxpart) -> void {
    if (slots == 0) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    if (remaining < slots) return;
    for (int p = std::min(maxpart, remaining - slots + 1); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, slots - 1, p);
      cur.pop_back();
    }
  };
  rec(rec, total, count, total);
  return out;
}

// kappa(mu, eta): the number of ways to pick ell(mu)-ell(eta)+1 blocks of mu
// (blocks with equal sizes count as distinct choices) and merge them into a
// single block so that the result is eta. Zero when impossible.
inline BigCount kappa(const Partition& mu, const Partition& eta) {
  if (mu.n() != eta.n()) throw error("kappa: partition size mismatch");
  int m = mu.ell() - eta.ell() + 1;
  if (m < 2) return 0;
  auto mu_mult = mu.multiplicities();
  BigCount total = 0;
  // The merged block must be some part u of eta with eta - {u} contained in mu;
  // the chosen blocks are then exactly the multiset mu - (eta - {u}).
  std::vector<int> seen;
  for (int u : eta.parts()) {
    if (std::find(seen.begin(), seen.end(), u) != seen.end()) continue;
    seen.push_back(u);
    std::map<int, int> need = mu_mult;  // need := mu - (eta - {u})
    bool ok = true;
    for (auto [value, mult] : eta.multiplicities()) {
      int take = mult - (value == u ? 1 : 0);
      auto it = need.find(value);
      int have = it == need.end() ? 0 : it->second;
      if (have < take) {
        ok = false;
        break;
      }
      if (it != need.end()) it->second -= take;
    }
    if (!ok) continue;
    int chosen = 0, sum = 0;
    for (auto [value, mult] : need) {
      chosen += mult;
      sum += value * mult;
    }
    if (chosen != m || sum != u) continue;
    BigCount ways = 1;
    for (auto [value, mult] : need) ways *= binomial(mu_mult.at(value), mult);
    total += ways;
  }
  return total;
}

// All mu obtained by splitting one eta-block into `parts` positive parts,
// paired with the merge multiplicity kappa(mu, eta).
inline std::vector<std::pair<Partition, BigCount>> splits(const Partition& eta, int parts) {
  if (parts < 3 || parts % 2 == 0) throw error("splits: part count must be odd and >= 3");
  std::vector<Partition> mus;
  std::vector<int> seen;
  for (size_t i = 0; i < eta.parts().size(); ++i) {
    int u = eta.parts()[i];
    if (std::find(seen.begin(), seen.end(), u) != seen.end()) continue;
    seen.push_back(u);
    if (u < parts) continue;
    for (const auto& pieces : partitions_into_parts(u, parts)) {
      std::vector<int> np = eta.parts();
      np.erase(np.begin() + static_cast<long>(i));
      np.insert(np.end(), pieces.begin(), pieces.end());
      Partition mu(np);
      if (std::find(mus.begin(), mus.end(), mu) == mus.end()) mus.push_back(mu);
    }
  }
  std::sort(mus.begin(), mus.end());
  std::vector<std::pair<Partition, BigCount>> out;
  out.reserve(mus.size());
  for (auto& mu : mus) out.emplace_back(mu, kappa(mu, eta));
  return out;
}

}  // namespace rotsys
