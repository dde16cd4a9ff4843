#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rotsys/budget.hpp"
#include "rotsys/numeric.hpp"
#include "rotsys/parallel.hpp"
#include "rotsys/perm.hpp"
#include "rotsys/planeperm.hpp"
#include "rotsys/rng.hpp"

namespace rotsys {

struct VertexRef {
  std::string name;
  std::vector<int> rotation;  // counterclockwise cycle, minimum label first
};

using FIncidence = Partition;  // a_i faces containing exactly i half edges of the vertex

// The induced q-cycle local object of a vertex: s_v is each incident face
// cycle restricted to H(v), pi_v the rotation at v, diag = s_v∘pi_v^{-1}.
struct VertexLocal {
  std::string name;
  std::vector<int> half_edges;  // H(v), sorted
  Permutation s_v;
  Permutation pi_v;
  Permutation diag;
  Partition lambda;  // cycle type of diag
  int q = 0;         // number of incident faces = cycles of s_v
  int degree = 0;
};

// One of the deg(v) segments a vertex cuts its incident faces into. The
// block is keyed by the half edge x in H(v) it follows: lower_left = beta(x)
// (bottom-row corner), upper_right = the next H(v) element along x's face,
// and contents the face segment strictly between them.
struct DiagonalBlock {
  int lower_left = 0;
  int upper_right = 0;
  std::vector<int> contents;
};

// Orientable embedding as a half-edge structure: alpha pairs the two half
// edges of every edge (fixed-point-free involution), beta is the rotation
// system (one counterclockwise cycle per vertex), and the faces are the
// cycles of alpha∘beta. Immutable; re-embedding returns a new value.
class Embedding {
 public:
  Embedding(Permutation alpha, Permutation beta, std::vector<std::string> names = {})
      : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (!same_ground(alpha_, beta_)) throw error("embedding: alpha and beta must share the half-edge set");
    if (alpha_.size() == 0) throw error("embedding: empty half-edge set");
    if (!alpha_.is_fixed_point_free_involution())
      throw error("embedding: alpha must be a fixed-point-free involution");
    auto cycles = beta_.cycles();
    if (!names.empty() && names.size() != cycles.size())
      throw error("embedding: vertex name count does not match vertex count");
    vertices_.reserve(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i) {
      std::string name = names.empty() ? "v" + std::to_string(i + 1) : names[i];
      if (!by_name_.emplace(name, i).second) throw error("embedding: duplicate vertex name " + name);
      vertices_.push_back(VertexRef{std::move(name), cycles[i]});
    }
    connected_ = transitive(alpha_, beta_);
  }

  const Permutation& alpha() const { return alpha_; }
  const Permutation& beta() const { return beta_; }
  int half_edge_count() const { return alpha_.size(); }
  int edge_count() const { return alpha_.size() / 2; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  bool connected() const { return connected_; }

  const std::vector<VertexRef>& vertices() const { return vertices_; }

  const VertexRef& vertex(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw error("unknown vertex: " + name);
    return vertices_[it->second];
  }

  bool has_vertex(const std::string& name) const { return by_name_.count(name) != 0; }

  Permutation face_perm() const { return compose(alpha_, beta_); }
  std::vector<std::vector<int>> faces() const { return face_perm().cycles(); }
  int face_count() const { return face_perm().cycle_count(); }

  int genus() const {
    if (!connected_) throw error("genus: embedding is disconnected");
    int twog = 2 - vertex_count() + edge_count() - face_count();
    if (twog < 0 || twog % 2 != 0) throw invariant_error("genus: Euler relation gave a bad value");
    return twog / 2;
  }

  // Poincare dual (alpha, gamma, beta): faces become vertices and vice versa.
  Embedding dual() const { return Embedding(alpha_, face_perm()); }

  // One k-cyc plane permutation per embedding: s = face permutation, pi =
  // rotation system; its diagonal is alpha. Gives the second, independent
  // genus route.
  KCycPlanePermutation as_plane_permutation() const { return KCycPlanePermutation(face_perm(), beta_); }

  VertexLocal vertex_local(const std::string& name) const {
    const VertexRef& v = vertex(name);
    std::vector<int> h = v.rotation;
    std::sort(h.begin(), h.end());
    VertexLocal out;
    out.name = name;
    out.half_edges = h;
    out.s_v = face_perm().induced_on(h);
    out.pi_v = beta_.induced_on(h);  // rotation cycle is H(v)-closed already
    out.diag = compose(out.s_v, out.pi_v.inverse());
    out.lambda = out.diag.cycle_type();
    out.q = out.s_v.cycle_count();
    out.degree = static_cast<int>(h.size());
    return out;
  }

  FIncidence f_incidence(const std::string& name) const {
    const VertexRef& v = vertex(name);
    std::set<int> h(v.rotation.begin(), v.rotation.end());
    std::vector<int> sizes;
    for (const auto& face : faces()) {
      int c = 0;
      for (int x : face) c += h.count(x);
      if (c > 0) sizes.push_back(c);
    }
    return Partition(std::move(sizes));
  }

  // Replace the rotation at one vertex; theta must be a single cycle on
  // exactly H(v). The underlying graph (alpha and the H(v) sets) is unchanged.
  Embedding reembed_vertex(const std::string& name, const Permutation& theta) const {
    const VertexRef& v = vertex(name);
    std::vector<int> h = v.rotation;
    std::sort(h.begin(), h.end());
    if (theta.labels() != h) throw error("reembed_vertex: theta must act on exactly the vertex's half edges");
    if (!theta.is_single_cycle()) throw error("reembed_vertex: theta must be a single cycle");
    std::map<int, int> img;
    for (size_t i = 0; i < beta_.labels().size(); ++i) img[beta_.labels()[i]] = beta_.images()[i];
    for (int x : h) img[x] = theta.apply(x);
    std::vector<std::string> names;
    names.reserve(vertices_.size());
    for (const auto& vr : vertices_) names.push_back(vr.name);
    return Embedding(alpha_, Permutation::from_map(img), std::move(names));
  }

  std::vector<DiagonalBlock> diagonal_blocks(const std::string& name) const {
    const VertexRef& v = vertex(name);
    std::set<int> h(v.rotation.begin(), v.rotation.end());
    Permutation gamma = face_perm();
    std::vector<DiagonalBlock> out;
    out.reserve(v.rotation.size());
    std::vector<int> sorted(h.begin(), h.end());
    for (int x : sorted) {
      DiagonalBlock b;
      b.lower_left = beta_.apply(x);
      int y = gamma.apply(x);
      while (!h.count(y)) {
        b.contents.push_back(y);
        y = gamma.apply(y);
      }
      b.upper_right = y;
      out.push_back(std::move(b));
    }
    return out;
  }

  // E-facial disjointness: no shared face, or exactly one shared face f0 in
  // which all of one vertex's half edges sit inside a single diagonal block
  // of the other.
  bool facial_disjoint(const std::string& uname, const std::string& vname) const {
    if (uname == vname) throw error("facial_disjoint: vertices must differ");
    const VertexRef& u = vertex(uname);
    const VertexRef& v = vertex(vname);
    std::set<int> hu(u.rotation.begin(), u.rotation.end());
    std::set<int> hv(v.rotation.begin(), v.rotation.end());
    auto fs = faces();
    std::vector<const std::vector<int>*> shared;
    for (const auto& f : fs) {
      bool tu = false, tv = false;
      for (int x : f) {
        tu = tu || hu.count(x);
        tv = tv || hv.count(x);
      }
      if (tu && tv) shared.push_back(&f);
    }
    if (shared.empty()) return true;
    if (shared.size() > 1) return false;
    const auto& f0 = *shared.front();
    auto confined = [&](const std::set<int>& inner, const std::string& outer) {
      // all of `inner`'s half edges in f0 inside one diagonal block of `outer`
      std::set<int> want;
      for (int x : f0)
        if (inner.count(x)) want.insert(x);
      for (const auto& b : diagonal_blocks(outer)) {
        std::set<int> got;
        for (int y : b.contents)
          if (want.count(y)) got.insert(y);
        if (got == want) return true;
      }
      return false;
    };
    return confined(hu, vname) || confined(hv, uname);
  }

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  Permutation alpha_;
  Permutation beta_;
  std::vector<VertexRef> vertices_;
  std::map<std::string, size_t> by_name_;
  bool connected_ = false;
};

// A one-face plane permutation read as a map: pi = rotation system, s = the
// face, diagonal = edge pairing (must be a fixed-point-free involution).
inline Embedding embedding_from_plane_permutation(const PlanePermutation& pp) {
  Permutation alpha = pp.diagonal();
  if (!alpha.is_fixed_point_free_involution())
    throw error("plane permutation is not a map: its diagonal is not a fixed-point-free involution");
  return Embedding(std::move(alpha), pp.pi());
}

// Uniform random rotation system over the same underlying graph: per vertex,
// a seeded shuffle of the non-anchor half edges (anchor = minimum), so each
// of the (d-1)! cyclic orders is equally likely. Deterministic given seed.
inline Embedding random_embedding(const Embedding& graph, std::uint64_t seed) {
  Rng rng(seed);
  std::map<int, int> img;
  for (size_t i = 0; i < graph.beta().labels().size(); ++i)
    img[graph.beta().labels()[i]] = graph.beta().labels()[i];
  std::vector<std::string> names;
  for (const auto& v : graph.vertices()) {
    names.push_back(v.name);
    std::vector<int> h = v.rotation;
    std::sort(h.begin(), h.end());
    std::vector<int> rest(h.begin() + 1, h.end());
    rng.shuffle(rest);
    int prev = h[0];
    for (int x : rest) {
      img[prev] = x;
      prev = x;
    }
    img[prev] = h[0];
  }
  return Embedding(graph.alpha(), Permutation::from_map(img), std::move(names));
}

// Exhaustive enumeration of the rotation systems of a graph, in documented
// lexicographic order: vertices sorted by minimum half edge, most significant
// first; per vertex the (d-1)! cyclic orders are the lexicographic
// permutations of the sorted non-anchor half edges. at(i) unranks directly,
// which is what makes deterministic parallel chunking possible.
class EmbeddingEnumerator {
 public:
  explicit EmbeddingEnumerator(const Embedding& graph) : graph_(graph) {
    for (const auto& v : graph_.vertices()) {
      std::vector<int> h = v.rotation;
      std::sort(h.begin(), h.end());
      slots_.push_back(std::move(h));
      names_.push_back(v.name);
    }
    total_ = 1;
    for (const auto& h : slots_) total_ *= factorial(static_cast<int>(h.size()) - 1);
  }

  const BigCount& total() const { return total_; }

  std::uint64_t total_checked(const Budget& budget) const {
    if (!budget.unlimited && total_ > BigCount(budget.enumeration_limit))
      throw budget_error("embedding enumeration refused: " + total_.str() + " rotation systems exceed the budget " +
                         std::to_string(budget.enumeration_limit));
    if (total_ > BigCount(UINT64_MAX)) throw budget_error("embedding enumeration: total does not fit in 64 bits");
    return static_cast<std::uint64_t>(total_);
  }

  Embedding at(std::uint64_t index) const {
    std::map<int, int> img;
    // Mixed radix, last vertex fastest.
    std::vector<std::uint64_t> digits(slots_.size(), 0);
    for (size_t vi = slots_.size(); vi-- > 0;) {
      std::uint64_t radix = 1;
      for (size_t d = 2; d + 1 <= slots_[vi].size(); ++d) radix *= d;  // (deg-1)!
      digits[vi] = index % radix;
      index /= radix;
    }
    for (size_t vi = 0; vi < slots_.size(); ++vi) {
      const auto& h = slots_[vi];
      std::vector<int> rest(h.begin() + 1, h.end());
      std::vector<int> order = unrank(rest, digits[vi]);
      int prev = h[0];
      for (int x : order) {
        img[prev] = x;
        prev = x;
      }
      img[prev] = h[0];
    }
    std::vector<std::string> names = names_;
    return Embedding(graph_.alpha(), Permutation::from_map(img), std::move(names));
  }

  template <typename Fn>
  void for_each(const Budget& budget, Fn fn) const {
    std::uint64_t n = total_checked(budget);
    for (std::uint64_t i = 0; i < n; ++i) fn(at(i), i);
  }

 private:
  static std::vector<int> unrank(std::vector<int> pool, std::uint64_t rank) {
    std::vector<int> out;
    out.reserve(pool.size());
    std::uint64_t f = 1;
    for (size_t i = 2; i <= pool.size(); ++i) f *= i;
    size_t remaining = pool.size();
    while (remaining > 0) {
      f = remaining > 1 ? f / remaining : 1;
      std::uint64_t d = remaining > 1 ? rank / f : 0;
      rank %= f ? f : 1;
      out.push_back(pool[static_cast<size_t>(d)]);
      pool.erase(pool.begin() + static_cast<long>(d));
      --remaining;
    }
    return out;
  }

  Embedding graph_;
  std::vector<std::vector<int>> slots_;
  std::vector<std::string> names_;
  BigCount total_;
};

}  // namespace rotsys
