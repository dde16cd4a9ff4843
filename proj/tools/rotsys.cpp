// rotsys: rotation-system embeddings, plane permutations, genus analysis.
//
// Subcommands: faces, genus, dual, reembed, count, certify, experiment.
// Exit codes: 0 ok, 1 usage, 2 parse/input, 3 budget, 4 internal invariant.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotsys/counting.hpp"
#include "rotsys/embedding.hpp"
#include "rotsys/reembed.hpp"
#include "rotsys/report.hpp"
#include "rotsys/rot_io.hpp"

namespace {

using nlohmann::json;
using namespace rotsys;

struct Options {
  std::string input;
  std::string vertex;
  std::string mode = "dist";
  std::string which = "min";
  std::string format = "text";
  std::string lambda_text;
  std::string eta_text;
  int k = 0;
  int n = 0;
  bool have_delta = false;
  int delta_g = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  bool random_mode = false;
  bool exhaustive_mode = false;
  int jobs = 1;
  bool oracle_check = false;
  bool unsafe_budget = false;
};

Budget make_budget(const Options& opt) {
  Budget b;
  b.unlimited = opt.unsafe_budget;
  return b;
}

void print(const Options& opt, const json& j, const std::string& text) {
  if (opt.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string render_faces_text(const Embedding& e) {
  std::string out;
  for (const auto& f : e.faces()) {
    out += "face:";
    for (int x : f) out += " " + std::to_string(x);
    out += "\n";
  }
  out += "V=" + std::to_string(e.vertex_count()) + " E=" + std::to_string(e.edge_count()) +
         " F=" + std::to_string(e.face_count());
  if (e.connected()) out += " genus=" + std::to_string(e.genus());
  out += "\n";
  return out;
}

Embedding load(const Options& opt) {
  if (opt.input.empty()) throw error("missing --input");
  return parse_embedding(read_file(opt.input));
}

int cmd_faces(const Options& opt) {
  Embedding e = load(opt);
  print(opt, report::faces_report(e), render_faces_text(e));
  return 0;
}

int cmd_genus(const Options& opt) {
  Embedding e = load(opt);
  json j = report::genus_report(e);
  print(opt, j,
        "V=" + std::to_string(e.vertex_count()) + " E=" + std::to_string(e.edge_count()) +
            " F=" + std::to_string(e.face_count()) + " genus=" + std::to_string(e.genus()) + "\n");
  return 0;
}

int cmd_dual(const Options& opt) {
  Embedding e = load(opt);
  Embedding d = e.dual();
  json j;
  j["dual"] = emit_rot(d);
  print(opt, j, emit_rot(d));
  return 0;
}

int cmd_reembed(const Options& opt) {
  Embedding e = load(opt);
  if (opt.vertex.empty()) throw error("reembed needs --vertex");
  if (!e.has_vertex(opt.vertex)) throw error("unknown vertex: " + opt.vertex);
  Budget budget = make_budget(opt);
  CountingContext ctx(budget, opt.jobs);
  const std::string& v = opt.vertex;
  if (opt.mode == "dist") {
    GenusDistribution dist;
    try {
      dist = genus_distribution_bruteforce(e, v, budget, opt.jobs);
    } catch (const budget_error& ex) {
      throw budget_error(std::string(ex.what()) + " (mode=count needs no enumeration)");
    }
    if (opt.oracle_check) {
      GenusDistribution counted = genus_distribution_counted(ctx, e, v);
      if (counted.histogram != dist.histogram)
        throw invariant_error("counted distribution disagrees with brute force at vertex " + v);
    }
    std::string text = "vertex " + v + " total " + dist.total.str() + "\n";
    for (auto& [dg, c] : dist.histogram) text += "dg " + std::to_string(dg) + ": " + c.str() + "\n";
    print(opt, report::distribution_report(dist), text);
  } else if (opt.mode == "count") {
    json j;
    std::string text;
    if (!opt.eta_text.empty()) {
      Partition eta = Partition::parse(opt.eta_text);
      BigCount c = count_eta(ctx, e, v, eta);
      j["count"] = c.str();
      j["eta"] = eta.str();
      j["vertex"] = v;
      text = c.str() + "\n";
    } else if (opt.have_delta) {
      BigCount c = count_delta(ctx, e, v, opt.delta_g);
      j["count"] = c.str();
      j["delta_g"] = opt.delta_g;
      j["vertex"] = v;
      text = c.str() + "\n";
    } else {
      throw error("reembed --mode count needs --delta-g or --eta");
    }
    print(opt, j, text);
  } else if (opt.mode == "prob") {
    BigRatio p = prob_preserve(ctx, e, v);
    json j;
    j["probability"] = p.str();
    j["vertex"] = v;
    print(opt, j, p.str() + "\n");
  } else if (opt.mode == "range") {
    auto [lo, hi] = delta_range(e, v);
    json j;
    j["hi"] = hi;
    j["lo"] = lo;
    j["vertex"] = v;
    print(opt, j, "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]\n");
  } else if (opt.mode == "enum") {
    const auto h = [&] {
      auto r = e.vertex(v).rotation;
      std::sort(r.begin(), r.end());
      return r;
    }();
    std::uint64_t total = 1;
    for (size_t i = 2; i + 1 <= h.size(); ++i) total *= i;
    budget.check_enumeration(total, "rotation enumeration at vertex " + v);
    int base_genus = e.genus();
    json pairs = json::array();
    std::string text;
    reembed_detail::for_each_cyclic_order(h, [&](const Permutation& theta) {
      Embedding after = e.reembed_vertex(v, theta);
      int dg = after.genus() - base_genus;
      if (opt.format == "json") {
        json p;
        p["delta_g"] = dg;
        p["theta"] = theta.cycles().front();
        pairs.push_back(p);
      } else {
        text += theta.str() + " " + std::to_string(dg) + "\n";
      }
    });
    json j;
    j["pairs"] = pairs;
    j["vertex"] = v;
    print(opt, j, text);
  } else {
    throw error("unknown reembed mode: " + opt.mode);
  }
  return 0;
}

int cmd_count(const Options& opt) {
  if (opt.lambda_text.empty()) throw error("count needs --lambda");
  if (opt.n <= 0) throw error("count needs -n");
  Partition lambda = Partition::parse(opt.lambda_text);
  Budget budget = make_budget(opt);
  CountingContext ctx(budget, opt.jobs);
  json j;
  BigCount c;
  if (!opt.eta_text.empty()) {
    Partition eta = Partition::parse(opt.eta_text);
    c = ctx.f_count(eta, lambda, opt.n);
    if (opt.oracle_check && ctx.brute_force_f(eta, lambda, opt.n) != c)
      throw invariant_error("f_count disagrees with brute force");
    j["eta"] = eta.str();
  } else if (opt.k >= 1) {
    c = ctx.p_count(opt.k, lambda, opt.n);
    if (opt.oracle_check) {
      if (ctx.brute_force_p(opt.k, lambda, opt.n) != c)
        throw invariant_error("p_count disagrees with brute force");
      if (opt.k == 1 && p1_closed_form(lambda, opt.n) != c)
        throw invariant_error("p_count disagrees with the closed form");
    }
    j["k"] = opt.k;
  } else {
    throw error("count needs -k or --eta");
  }
  j["count"] = c.str();
  j["lambda"] = lambda.str();
  j["n"] = opt.n;
  print(opt, j, c.str() + "\n");
  return 0;
}

int cmd_certify(const Options& opt) {
  Embedding e = load(opt);
  CertificateReport r = opt.which == "max" ? check_locally_maximal(e) : check_min_genus_condition(e);
  std::string text = r.which + "-genus certificate (" + r.semantics + "): " + (r.pass ? "pass" : "fail") + "\n";
  for (const auto& v : r.vertices)
    if (!v.pass)
      text += "violated at vertex " + v.name + " (deg=" + std::to_string(v.degree) +
              " faces=" + std::to_string(v.q) + " diagonal-cycles=" + std::to_string(v.lambda_ell) + ")\n";
  print(opt, report::certificate_report(r), text);
  return 0;
}

int cmd_experiment(const Options& opt) {
  Embedding graph = load(opt);
  if (opt.random_mode == opt.exhaustive_mode) throw error("experiment needs exactly one of --random / --exhaustive");
  Budget budget = make_budget(opt);
  if (!graph.connected()) throw error("experiment: graph is disconnected");
  int beta_number = graph.edge_count() - graph.vertex_count() + 1;

  struct Agg {
    std::map<int, std::uint64_t> genus_hist;
    int min_est = INT32_MAX, max_est = INT32_MIN;
    void absorb(const Embedding& e) {
      int g = e.genus();
      ++genus_hist[g];
      RangeEstimate r = estimate_range(e);
      min_est = std::min(min_est, g + r.t1);
      max_est = std::max(max_est, g + r.t2);
    }
    void merge(const Agg& o) {
      for (auto [g, c] : o.genus_hist) genus_hist[g] += c;
      min_est = std::min(min_est, o.min_est);
      max_est = std::max(max_est, o.max_est);
    }
  };

  Agg total;
  std::uint64_t count = 0;
  if (opt.exhaustive_mode) {
    EmbeddingEnumerator en(graph);
    count = en.total_checked(budget);
    auto chunks = run_chunked<Agg>(count, opt.jobs, 512, [&](std::uint64_t b, std::uint64_t e_) {
      Agg a;
      for (std::uint64_t i = b; i < e_; ++i) a.absorb(en.at(i));
      return a;
    });
    for (auto& a : chunks) total.merge(a);
  } else {
    if (opt.samples <= 0) throw error("experiment --random needs --samples");
    count = static_cast<std::uint64_t>(opt.samples);
    auto chunks = run_chunked<Agg>(count, opt.jobs, 64, [&](std::uint64_t b, std::uint64_t e_) {
      Agg a;
      for (std::uint64_t i = b; i < e_; ++i) a.absorb(random_embedding(graph, Rng::derive(opt.seed, i)));
      return a;
    });
    for (auto& a : chunks) total.merge(a);
  }

  json hist = json::object();
  for (auto [g, c] : total.genus_hist) hist[std::to_string(g)] = std::to_string(c);
  json j;
  j["embeddings"] = std::to_string(count);
  j["genus_histogram"] = hist;
  j["mode"] = opt.exhaustive_mode ? "exhaustive" : "random";
  j["outer_range"] = {0, beta_number / 2};
  j["range"] = {{"gmax_lower", total.max_est}, {"gmin_upper", total.min_est}};
  if (opt.random_mode) j["seed"] = std::to_string(opt.seed);
  std::string text = "embeddings " + std::to_string(count) + "\n";
  for (auto [g, c] : total.genus_hist)
    text += "genus " + std::to_string(g) + ": " + std::to_string(c) + "\n";
  text += "gmin <= " + std::to_string(total.min_est) + ", gmax >= " + std::to_string(total.max_est) + "\n";
  print(opt, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotation systems, plane permutations and re-embedding analysis"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("--input,-i", opt.input, "input .rot or two-line file")->required();
    sub->add_option("--format", opt.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--jobs", opt.jobs, "worker count (output independent of it)");
    sub->add_flag("--unsafe-budget", opt.unsafe_budget, "lift enumeration budgets");
  };

  CLI::App* faces = app.add_subcommand("faces", "list faces and genus");
  add_common(faces, true);
  CLI::App* genus = app.add_subcommand("genus", "Euler data and genus");
  add_common(genus, true);
  CLI::App* dual = app.add_subcommand("dual", "emit the Poincare dual");
  add_common(dual, true);

  CLI::App* reembed = app.add_subcommand("reembed", "single-vertex re-embedding analysis");
  add_common(reembed, true);
  reembed->add_option("--vertex,-v", opt.vertex, "vertex name")->required();
  reembed->add_option("--mode", opt.mode, "dist|count|prob|range|enum")
      ->check(CLI::IsMember({"dist", "count", "prob", "range", "enum"}));
  reembed->add_option("--delta-g", opt.delta_g, "genus change for --mode count")
      ->each([&](const std::string&) { opt.have_delta = true; });
  reembed->add_option("--eta", opt.eta_text, "f-incidence partition for --mode count");
  reembed->add_flag("--oracle-check", opt.oracle_check, "cross-check against the independent engine");

  CLI::App* count = app.add_subcommand("count", "one-face factorization counts");
  add_common(count, false);
  count->add_option("-k", opt.k, "number of cycles (p-count)");
  count->add_option("--eta", opt.eta_text, "cycle type of the rotation side (f-count)");
  count->add_option("--lambda", opt.lambda_text, "cycle type of the diagonal")->required();
  count->add_option("-n", opt.n, "ground-set size")->required();
  count->add_flag("--oracle-check", opt.oracle_check, "cross-check against brute force");

  CLI::App* certify = app.add_subcommand("certify", "min/max genus necessary conditions");
  add_common(certify, true);
  certify->add_option("--which", opt.which, "min|max")->check(CLI::IsMember({"min", "max"}));

  CLI::App* experiment = app.add_subcommand("experiment", "sample or enumerate rotation systems");
  add_common(experiment, true);
  experiment->add_flag("--random", opt.random_mode, "sample rotation systems");
  experiment->add_flag("--exhaustive", opt.exhaustive_mode, "enumerate all rotation systems");
  experiment->add_option("--samples", opt.samples, "sample count for --random");
  experiment->add_option("--seed", opt.seed, "RNG seed (64-bit)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  auto fail = [&](int code, const std::string& message) {
    if (opt.format == "json")
      std::cout << rotsys::report::error_report(code, message).dump(2) << "\n";
    else
      std::cerr << "error: " << message << "\n";
    return code;
  };

  try {
    if (faces->parsed()) return cmd_faces(opt);
    if (genus->parsed()) return cmd_genus(opt);
    if (dual->parsed()) return cmd_dual(opt);
    if (reembed->parsed()) return cmd_reembed(opt);
    if (count->parsed()) return cmd_count(opt);
    if (certify->parsed()) return cmd_certify(opt);
    if (experiment->parsed()) return cmd_experiment(opt);
  } catch (const rotsys::parse_error& e) {
    return fail(2, e.what());
  } catch (const rotsys::budget_error& e) {
    return fail(3, e.what());
  } catch (const rotsys::invariant_error& e) {
    return fail(4, e.what());
  } catch (const rotsys::error& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(4, e.what());
  }
  return 1;
}
