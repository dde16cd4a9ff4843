#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rotsys/counting.hpp"
#include "rotsys/embedding.hpp"

namespace rotsys {

// Exact histogram of genus changes over all (deg-1)! cyclic rearrangements
// of one vertex. total is always (deg-1)!.
struct GenusDistribution {
  std::string vertex;
  BigCount total = 0;
  std::map<int, BigCount> histogram;  // delta g -> count
};

namespace reembed_detail {

inline std::vector<int> sorted_half_edges(const Embedding& e, const std::string& name) {
  std::vector<int> h = e.vertex(name).rotation;
  std::sort(h.begin(), h.end());
  return h;
}

}  // namespace reembed_detail

// Brute force: re-trace the faces of every rearranged embedding and take the
// Euler genus. Deliberately independent of the counting engine — this is the
// oracle the formulas are checked against. Chunked deterministically across
// workers.
inline GenusDistribution genus_distribution_bruteforce(const Embedding& e, const std::string& name,
                                                       const Budget& budget = {}, int jobs = 1) {
  const auto h = reembed_detail::sorted_half_edges(e, name);
  const int d = static_cast<int>(h.size());
  std::uint64_t total = 1;
  for (int i = 2; i <= d - 1; ++i) total *= static_cast<std::uint64_t>(i);
  budget.check_enumeration(total, "rotation enumeration at vertex " + name);

  // Contiguous index form for the hot loop.
  const auto& labels = e.beta().labels();
  const int n = static_cast<int>(labels.size());
  auto index_of = [&](int x) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin());
  };
  std::vector<int> alpha0(static_cast<size_t>(n)), beta0(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    alpha0[static_cast<size_t>(i)] = index_of(e.alpha().images()[static_cast<size_t>(i)]);
    beta0[static_cast<size_t>(i)] = index_of(e.beta().images()[static_cast<size_t>(i)]);
  }
  std::vector<int> hv;
  hv.reserve(h.size());
  for (int x : h) hv.push_back(index_of(x));
  const int faces_before = e.face_count();

  using Hist = std::map<int, std::uint64_t>;
  auto trace_delta = [&](std::vector<int>& beta_new, std::vector<char>& visited) {
    visited.assign(static_cast<size_t>(n), 0);
    int faces = 0;
    for (int i = 0; i < n; ++i) {
      if (visited[static_cast<size_t>(i)]) continue;
      ++faces;
      int x = i;
      while (!visited[static_cast<size_t>(x)]) {
        visited[static_cast<size_t>(x)] = 1;
        x = alpha0[static_cast<size_t>(beta_new[static_cast<size_t>(x)])];
      }
    }
    return (faces_before - faces) / 2;  // fewer faces = higher genus
  };

  std::vector<Hist> chunks;
  if (d <= 2) {
    // a single cyclic order
    std::vector<char> visited;
    Hist hist;
    std::vector<int> beta_new = beta0;
    ++hist[trace_delta(beta_new, visited)];
    chunks.push_back(std::move(hist));
  } else {
    chunks = run_chunked<Hist>(
        static_cast<std::uint64_t>(d - 1), jobs, 1, [&](std::uint64_t c0, std::uint64_t) {
          Hist hist;
          std::vector<int> rest;
          for (int i = 1; i < d; ++i)
            if (i != static_cast<int>(c0) + 1) rest.push_back(hv[static_cast<size_t>(i)]);
          const int first = hv[static_cast<size_t>(c0) + 1];
          std::vector<int> beta_new = beta0;
          std::vector<char> visited;
          do {
            int prev = hv[0];
            beta_new[static_cast<size_t>(prev)] = first;
            prev = first;
            for (int x : rest) {
              beta_new[static_cast<size_t>(prev)] = x;
              prev = x;
            }
            beta_new[static_cast<size_t>(prev)] = hv[0];
            ++hist[trace_delta(beta_new, visited)];
          } while (std::next_permutation(rest.begin(), rest.end()));
          return hist;
        });
  }
  GenusDistribution out;
  out.vertex = name;
  out.total = BigCount(total);
  for (const auto& hist : chunks)
    for (auto [dg, c] : hist) out.histogram[dg] += c;
  return out;
}

// Number of rearrangements of H(v) changing the genus by exactly delta_g:
// p_count(q - 2*delta_g, lambda(D_v), deg(v)). The face count at the vertex
// drops by 2 per unit of genus gained (Euler), hence the minus sign.
inline BigCount count_delta(CountingContext& ctx, const Embedding& e, const std::string& name, int delta_g) {
  VertexLocal vl = e.vertex_local(name);
  int faces_after = vl.q - 2 * delta_g;
  if (faces_after < 1 || faces_after > vl.degree) return 0;
  return ctx.p_count(faces_after, vl.lambda, vl.degree);
}

// Same distribution as the brute force but assembled from the counting
// engine; no enumeration.
inline GenusDistribution genus_distribution_counted(CountingContext& ctx, const Embedding& e,
                                                    const std::string& name) {
  VertexLocal vl = e.vertex_local(name);
  GenusDistribution out;
  out.vertex = name;
  out.total = factorial(vl.degree - 1);
  int lo = -((vl.degree - vl.q) / 2), hi = (vl.q - 1) / 2;
  BigCount sum = 0;
  for (int dg = lo; dg <= hi; ++dg) {
    BigCount c = count_delta(ctx, e, name, dg);
    if (c != 0) out.histogram[dg] = c;
    sum += c;
  }
  if (sum != out.total) throw invariant_error("genus distribution does not sum to (deg-1)!");
  return out;
}

// Number of rearrangements giving f-incidence distribution eta:
// f_count(eta, lambda(D_v), deg(v)).
inline BigCount count_eta(CountingContext& ctx, const Embedding& e, const std::string& name,
                          const Partition& eta) {
  VertexLocal vl = e.vertex_local(name);
  if (eta.n() != vl.degree) throw error("count_eta: |eta| must equal deg(v)");
  return ctx.f_count(eta, vl.lambda, vl.degree);
}

// Probability that a uniformly random rearrangement of H(v) preserves the
// genus, as an exact rational R_v(0)/(deg(v)-1)!.
inline BigRatio prob_preserve(CountingContext& ctx, const Embedding& e, const std::string& name) {
  VertexLocal vl = e.vertex_local(name);
  BigCount keep = count_delta(ctx, e, name, 0);
  return BigRatio(keep, factorial(vl.degree - 1));
}

// Is there a second, different arrangement with the same genus? False exactly
// when the current arrangement is the only genus-preserving one.
inline bool exists_alternative(CountingContext& ctx, const Embedding& e, const std::string& name) {
  return count_delta(ctx, e, name, 0) >= 2;
}

// Achievable genus-change interval for one vertex:
// -floor((deg+1-l(lambda(D_v))-q)/2) <= delta_g <= floor((q-1)/2); every value
// in between is attained.
inline std::pair<int, int> delta_range(const Embedding& e, const std::string& name) {
  VertexLocal vl = e.vertex_local(name);
  int lo = -((vl.degree + 1 - vl.lambda.ell() - vl.q) / 2);
  int hi = (vl.q - 1) / 2;
  return {lo, hi};
}

struct VertexRangeInfo {
  std::string name;
  int degree = 0;
  int q = 0;
  int lambda_ell = 0;
  int lo = 0;  // <= 0
  int hi = 0;  // >= 0
};

// g_min(G) <= g(E) + t1 <= g(E) + t2 <= g_max(G).
struct RangeEstimate {
  int t1 = 0;
  int t2 = 0;
  std::string mode;  // "per-vertex", "exact-sets" or "greedy-sets"
  std::vector<VertexRangeInfo> per_vertex;
};

namespace reembed_detail {

inline std::vector<VertexRangeInfo> vertex_infos(const Embedding& e) {
  std::vector<VertexRangeInfo> out;
  for (const auto& v : e.vertices()) {
    VertexLocal vl = e.vertex_local(v.name);
    VertexRangeInfo info;
    info.name = v.name;
    info.degree = vl.degree;
    info.q = vl.q;
    info.lambda_ell = vl.lambda.ell();
    info.lo = -((vl.degree + 1 - vl.lambda.ell() - vl.q) / 2);
    info.hi = (vl.q - 1) / 2;
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace reembed_detail

// T1 = min over vertices of the lower endpoint, T2 = max of the upper.
inline RangeEstimate estimate_range(const Embedding& e) {
  if (!e.connected()) throw error("estimate_range: embedding is disconnected");
  RangeEstimate out;
  out.mode = "per-vertex";
  out.per_vertex = reembed_detail::vertex_infos(e);
  for (const auto& info : out.per_vertex) {
    out.t1 = std::min(out.t1, info.lo);
    out.t2 = std::max(out.t2, info.hi);
  }
  return out;
}

// Optimized variant summing contributions over sets of mutually facial-
// disjoint vertices (their re-embeddings compose independently). Exact subset
// search up to 12 vertices, greedy beyond.
inline RangeEstimate estimate_range_covers(const Embedding& e) {
  if (!e.connected()) throw error("estimate_range_covers: embedding is disconnected");
  RangeEstimate out;
  out.per_vertex = reembed_detail::vertex_infos(e);
  const int nv = static_cast<int>(out.per_vertex.size());
  std::vector<std::vector<bool>> ok(static_cast<size_t>(nv), std::vector<bool>(static_cast<size_t>(nv), false));
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      ok[static_cast<size_t>(i)][static_cast<size_t>(j)] = ok[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          e.facial_disjoint(out.per_vertex[static_cast<size_t>(i)].name, out.per_vertex[static_cast<size_t>(j)].name);
  if (nv <= 12) {
    out.mode = "exact-sets";
    for (unsigned mask = 0; mask < (1u << nv); ++mask) {
      bool feasible = true;
      int lo = 0, hi = 0;
      for (int i = 0; i < nv && feasible; ++i) {
        if (!(mask >> i & 1)) continue;
        for (int j = i + 1; j < nv && feasible; ++j)
          if ((mask >> j & 1) && !ok[static_cast<size_t>(i)][static_cast<size_t>(j)]) feasible = false;
        lo += out.per_vertex[static_cast<size_t>(i)].lo;
        hi += out.per_vertex[static_cast<size_t>(i)].hi;
      }
      if (!feasible) continue;
      out.t1 = std::min(out.t1, lo);
      out.t2 = std::max(out.t2, hi);
    }
  } else {
    out.mode = "greedy-sets";
    auto greedy = [&](auto better_key) {
      std::vector<int> order(static_cast<size_t>(nv));
      for (int i = 0; i < nv; ++i) order[static_cast<size_t>(i)] = i;
      std::sort(order.begin(), order.end(), better_key);
      std::vector<int> chosen;
      int sum_lo = 0, sum_hi = 0;
      for (int i : order) {
        bool compat = true;
        for (int j : chosen)
          if (!ok[static_cast<size_t>(i)][static_cast<size_t>(j)]) compat = false;
        if (!compat) continue;
        chosen.push_back(i);
        sum_lo += out.per_vertex[static_cast<size_t>(i)].lo;
        sum_hi += out.per_vertex[static_cast<size_t>(i)].hi;
      }
      return std::pair<int, int>{sum_lo, sum_hi};
    };
    auto [lo1, hi1] = greedy([&](int a, int b) {
      return out.per_vertex[static_cast<size_t>(a)].lo < out.per_vertex[static_cast<size_t>(b)].lo;
    });
    auto [lo2, hi2] = greedy([&](int a, int b) {
      return out.per_vertex[static_cast<size_t>(a)].hi > out.per_vertex[static_cast<size_t>(b)].hi;
    });
    out.t1 = std::min(0, lo1);
    out.t2 = std::max(0, hi2);
  }
  return out;
}

// Per-vertex certificate reports. Both conditions are necessary, not
// sufficient; an empty violation list proves nothing by itself.
struct CertificateEntry {
  std::string name;
  int degree = 0;
  int q = 0;
  int lambda_ell = 0;
  bool pass = false;
};

struct CertificateReport {
  std::string which;     // "min" or "max"
  std::string semantics = "necessary condition, not sufficient";
  bool pass = true;
  std::vector<CertificateEntry> vertices;
};

// Minimum-genus necessary condition: l(lambda(D_v)) + q_v = deg(v) + 1 at
// every vertex (otherwise some rearrangement strictly lowers the genus).
inline CertificateReport check_min_genus_condition(const Embedding& e) {
  CertificateReport out;
  out.which = "min";
  for (const auto& info : reembed_detail::vertex_infos(e)) {
    CertificateEntry entry{info.name, info.degree, info.q, info.lambda_ell, false};
    entry.pass = info.lambda_ell + info.q == info.degree + 1;
    out.pass = out.pass && entry.pass;
    out.vertices.push_back(std::move(entry));
  }
  return out;
}

// Maximum-genus necessary condition: every vertex incident to at most 2
// faces (a vertex on >= 3 faces always admits a genus-raising rearrangement).
inline CertificateReport check_locally_maximal(const Embedding& e) {
  CertificateReport out;
  out.which = "max";
  for (const auto& info : reembed_detail::vertex_infos(e)) {
    CertificateEntry entry{info.name, info.degree, info.q, info.lambda_ell, info.q <= 2};
    out.pass = out.pass && entry.pass;
    out.vertices.push_back(std::move(entry));
  }
  return out;
}

namespace reembed_detail {

struct CombinedLocal {
  std::vector<int> half_edges;
  std::vector<std::vector<int>> vertex_half_edges;
  Permutation s_c;
  Permutation pi_c;
  Permutation diag;
  int q_total = 0;
};

inline CombinedLocal combined_local(const Embedding& e, const std::vector<std::string>& names) {
  if (names.empty()) throw error("combined local object needs at least one vertex");
  CombinedLocal out;
  std::set<int> h;
  for (const auto& name : names) {
    auto hv = sorted_half_edges(e, name);
    for (int x : hv)
      if (!h.insert(x).second) throw error("combined local object: vertices must be distinct");
    out.vertex_half_edges.push_back(std::move(hv));
  }
  out.half_edges.assign(h.begin(), h.end());
  out.s_c = e.face_perm().induced_on(out.half_edges);
  out.pi_c = e.beta().induced_on(out.half_edges);
  out.diag = compose(out.s_c, out.pi_c.inverse());
  out.q_total = static_cast<int>(out.half_edges.size());
  return out;
}

template <typename Fn>
void for_each_cyclic_order(const std::vector<int>& h, Fn fn) {
  if (h.size() <= 2) {
    fn(Permutation::from_cycles({h}));
    return;
  }
  std::vector<int> rest(h.begin() + 1, h.end());
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> cyc;
    cyc.push_back(h[0]);
    cyc.insert(cyc.end(), rest.begin(), rest.end());
    fn(Permutation::from_cycles({cyc}));
  } while (std::next_permutation(rest.begin(), rest.end()));
}

}  // namespace reembed_detail

// Simultaneous one-face-preserving rearrangements of m vertices: the number
// of ways to factor the combined diagonal into (one cycle) * (m cycles, the
// i-th supported exactly on H(V_i)). Constrained brute force over all
// products of cyclic orders.
inline BigCount dsh_count(const Embedding& e, const std::vector<std::string>& names, const Budget& budget = {}) {
  if (e.face_count() != 1) throw error("dsh_count: embedding must have one face");
  auto cl = reembed_detail::combined_local(e, names);
  BigCount total = 1;
  for (const auto& hv : cl.vertex_half_edges) total *= factorial(static_cast<int>(hv.size()) - 1);
  if (!budget.unlimited && total > BigCount(budget.enumeration_limit))
    throw budget_error("dsh_count: " + total.str() + " simultaneous rearrangements exceed the budget");
  BigCount hits = 0;
  // sigma is assembled vertex by vertex; theta_i = inverse of sigma on H(V_i),
  // so enumerating cyclic orders of each H(V_i) covers all sigma.
  std::map<int, int> sigma;
  auto rec = [&](auto&& self, size_t vi) -> void {
    if (vi == cl.vertex_half_edges.size()) {
      Permutation sg = Permutation::from_map(sigma);
      Permutation gamma_t = compose(cl.diag, sg.inverse());
      if (gamma_t.is_single_cycle()) ++hits;
      return;
    }
    reembed_detail::for_each_cyclic_order(cl.vertex_half_edges[vi], [&](const Permutation& theta) {
      for (int x : theta.labels()) sigma[x] = theta.apply(x);
      self(self, vi + 1);
    });
  };
  rec(rec, 0);
  return hits;
}

// Count of local variations (incidences + rotations may change, degree
// distribution mu preserved) keeping one face: f_count(mu, lambda(D), q).
inline BigCount le_count(CountingContext& ctx, const Embedding& e, const std::vector<std::string>& names,
                         const Partition& mu) {
  if (e.face_count() != 1) throw error("le_count: embedding must have one face");
  auto cl = reembed_detail::combined_local(e, names);
  if (mu.n() != cl.q_total) throw error("le_count: |mu| must equal the total number of half edges");
  return ctx.f_count(mu, cl.diag.cycle_type(), cl.q_total);
}

// Count of local variations keeping the number of vertices and one face:
// p_count(m, lambda(D), q).
inline BigCount le_count_vertices(CountingContext& ctx, const Embedding& e,
                                  const std::vector<std::string>& names) {
  if (e.face_count() != 1) throw error("le_count_vertices: embedding must have one face");
  auto cl = reembed_detail::combined_local(e, names);
  return ctx.p_count(static_cast<int>(names.size()), cl.diag.cycle_type(), cl.q_total);
}

// The three guided moves: one fixed cyclic rearrangement whose genus effect
// is read off the face configuration of the chosen triple.
enum class GuidedCase {
  preserve_one_face,    // one face visits a, b, c in that order: delta g = 0
  preserve_split,       // a, b share a face, c on another: delta g = 0
  raise_genus,          // three distinct faces: delta g = +1
  lower_genus,          // one face visits a, c, b: delta g = -1
  unclassified          // other two-face patterns; executed and measured
};

inline const char* guided_case_name(GuidedCase c) {
  switch (c) {
    case GuidedCase::preserve_one_face: return "preserve-one-face";
    case GuidedCase::preserve_split: return "preserve-split";
    case GuidedCase::raise_genus: return "raise";
    case GuidedCase::lower_genus: return "lower";
    case GuidedCase::unclassified: return "unclassified";
  }
  return "?";
}

struct GuidedMove {
  Embedding result;
  GuidedCase configuration;
  std::optional<int> predicted;
  int observed = 0;
};

// Rearranges H(v) from (a, A.., b, B.., c, C..) to (a, B.., c, A.., b, C..),
// where A, B, C are the rotation segments after a, b, c. The triple must
// appear in the rotation in the order a, b, c.
inline GuidedMove guided_move(const Embedding& e, const std::string& name, std::array<int, 3> triple) {
  const auto& v = e.vertex(name);
  auto [a, b, c] = triple;
  const auto& rot = v.rotation;
  auto pos = [&](int x) {
    auto it = std::find(rot.begin(), rot.end(), x);
    if (it == rot.end()) throw error("guided_move: half edge " + std::to_string(x) + " is not at vertex " + name);
    return static_cast<size_t>(it - rot.begin());
  };
  size_t pa = pos(a), pb = pos(b), pc = pos(c);
  if (a == b || b == c || a == c) throw error("guided_move: triple must be three distinct half edges");
  // rotate so a leads, then b must precede c
  auto rel = [&](size_t p) { return (p + rot.size() - pa) % rot.size(); };
  if (!(rel(pb) < rel(pc)) || rel(pb) == 0)
    throw error("guided_move: triple must appear in rotation order (a .. b .. c ..)");
  std::vector<int> seq(rot.size());
  for (size_t i = 0; i < rot.size(); ++i) seq[rel(i)] = rot[i];
  std::vector<int> segA(seq.begin() + 1, seq.begin() + static_cast<long>(rel(pb)));
  std::vector<int> segB(seq.begin() + static_cast<long>(rel(pb)) + 1, seq.begin() + static_cast<long>(rel(pc)));
  std::vector<int> segC(seq.begin() + static_cast<long>(rel(pc)) + 1, seq.end());
  std::vector<int> theta_seq;
  theta_seq.push_back(a);
  theta_seq.insert(theta_seq.end(), segB.begin(), segB.end());
  theta_seq.push_back(c);
  theta_seq.insert(theta_seq.end(), segA.begin(), segA.end());
  theta_seq.push_back(b);
  theta_seq.insert(theta_seq.end(), segC.begin(), segC.end());
  Permutation theta = Permutation::from_cycles({theta_seq});

  // face configuration of the triple
  auto fs = e.faces();
  auto face_of = [&](int x) {
    for (size_t i = 0; i < fs.size(); ++i)
      if (std::find(fs[i].begin(), fs[i].end(), x) != fs[i].end()) return i;
    throw invariant_error("guided_move: half edge missing from every face");
  };
  size_t fa = face_of(a), fb = face_of(b), fc = face_of(c);
  GuidedCase conf;
  std::optional<int> predicted;
  if (fa != fb && fb != fc && fa != fc) {
    conf = GuidedCase::raise_genus;
    predicted = +1;
  } else if (fa == fb && fb == fc) {
    const auto& f = fs[fa];
    size_t qa = static_cast<size_t>(std::find(f.begin(), f.end(), a) - f.begin());
    bool b_first = false;
    for (size_t step = 1; step < f.size(); ++step) {
      int y = f[(qa + step) % f.size()];
      if (y == b) { b_first = true; break; }
      if (y == c) break;
    }
    conf = b_first ? GuidedCase::preserve_one_face : GuidedCase::lower_genus;
    predicted = b_first ? 0 : -1;
  } else if (fa == fb) {
    conf = GuidedCase::preserve_split;
    predicted = 0;
  } else {
    conf = GuidedCase::unclassified;
  }

  Embedding after = e.reembed_vertex(name, theta);
  int observed = after.genus() - e.genus();
  if (predicted && *predicted != observed)
    throw invariant_error("guided_move: predicted genus change " + std::to_string(*predicted) +
                          " but observed " + std::to_string(observed));
  return GuidedMove{std::move(after), conf, predicted, observed};
}

}  // namespace rotsys
