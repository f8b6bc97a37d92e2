// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails, except that a wall-clock ordering miss alone is reported
// but not fatal: timings depend on the machine.
//
//   acceptance [social.txt] [--k K] [--b B] [--reps R]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "helpers.hpp"
#include "ktm/cascade.hpp"
#include "ktm/groups.hpp"
#include "ktm/minimize.hpp"
#include "ktm/truss.hpp"
#include "oracles.hpp"

using namespace ktm;
using helpers::to_vector;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  bool timing_only = false;
  std::string detail;
  std::size_t checks = 0;
  std::size_t violations = 0;

  void check(bool ok, const std::string& what = {}) {
    ++checks;
    if (ok) return;
    ++violations;
    pass = false;
    if (detail.empty()) detail = what;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Graph random_graph(int trial, std::mt19937_64& rng) {
  return trial % 2 ? gen::erdos_renyi(8 + trial % 17, 0.3 + 0.3 * (trial % 4) / 3.0, rng) : gen::planted(22, rng);
}

std::vector<EdgeId> sorted(std::vector<EdgeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

MinimizationReport run(const Graph& g, int k, int b, Algorithm a, unsigned threads = 1) {
  SolverConfig cfg;
  cfg.k = k;
  cfg.b = b;
  cfg.algorithm = a;
  cfg.threads = threads;
  return solve(g, cfg);
}

oracle::Partition partition_of(const GroupIndex::Level& lv) {
  oracle::Partition out;
  for (const auto& [gid, members] : lv.members) out.insert(sorted(members));
  return out;
}

Outcome decomposition() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + trial % 20;
    const double p = 0.3 + 0.3 * (trial % 7) / 6.0;
    const auto g = gen::erdos_renyi(n, p, rng);
    o.check(truss_decompose(g).tau == oracle::trussness(g), "trial " + std::to_string(trial));
  }
  const double secs = seconds_since(start);
  o.check(secs < 60.0, "suite took too long");
  o.detail = o.pass ? "200 graphs, " + std::to_string(secs).substr(0, 5) + " s" : o.detail;
  return o;
}

Outcome cascade() {
  Outcome o;
  std::mt19937_64 rng(102);
  int trials = 0;
  while (trials < 500) {
    const auto g = random_graph(trials, rng);
    const int k = 3 + static_cast<int>(rng() % 3);
    const auto t = k_truss(g, k);
    if (t.empty()) continue;
    ++trials;
    auto ids = t.edge_ids();
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(std::min<std::size_t>(ids.size(), 1 + rng() % 3));
    const auto out = delete_and_cascade(t, ids);
    auto rest = to_vector(t);
    for (EdgeId e : ids) rest[e] = false;
    o.check(to_vector(out.surviving) == oracle::k_truss(g, k, rest), "surviving truss differs");
    o.check(sorted(out.followers) == oracle::followers(g, k, to_vector(t), ids), "follower set differs");
  }
  if (o.pass) o.detail = "500 trials";
  return o;
}

Outcome group_rules() {
  Outcome o;
  std::mt19937_64 rng(103);
  int graphs = 0;
  for (int trial = 0; graphs < 100; ++trial) {
    const auto g = random_graph(trial, rng);
    const int k = 3 + trial % 3;
    const auto t = k_truss(g, k);
    if (t.empty()) continue;
    ++graphs;
    const auto scan = find_support_groups(t);
    const auto index = build_truss_group_index(g, truss_decompose(g), k);
    CascadeSimulator sim(t);
    std::vector<std::vector<EdgeId>> fol(g.edge_count());
    for (EdgeId e : t.edge_ids()) {
      sim.run(e);
      fol[e] = sorted({sim.followers().begin(), sim.followers().end()});
    }
    auto follows = [&](EdgeId e, EdgeId x) { return std::binary_search(fol[e].begin(), fol[e].end(), x); };
    for (EdgeId e : t.edge_ids()) {
      if (!scan.q.test(e)) o.check(fol[e].empty(), "edge outside Q has followers");
      o.check(upper_bound(index, e) >= static_cast<std::int64_t>(fol[e].size()), "upper bound below followers");
    }
    for (const auto& grp : scan.groups)
      for (EdgeId m : grp.members) {
        for (EdgeId other : grp.members)
          if (other != m) o.check(follows(m, other), "group member survives another's deletion");
        for (EdgeId x : grp.pruned_followers) o.check(follows(m, x), "pruned edge is not a follower");
      }
  }
  if (o.pass) o.detail = "100 graphs, " + std::to_string(o.checks) + " checks";
  return o;
}

// Criterion-4 workload: random graphs plus clique fixtures over k and b.
void for_each_pruning_run(const std::function<void(const Graph&, int, int)>& f) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(trial, rng);
    for (int k = 3; k <= 5; ++k)
      for (int b = 1; b <= 3; ++b) f(g, k, b);
  }
  const std::vector<Graph> fixtures = {gen::clique(4),
                                       gen::clique(5),
                                       gen::clique(6),
                                       gen::clique(7),
                                       gen::disjoint_cliques({4, 5}),
                                       gen::disjoint_cliques({5, 5}),
                                       gen::disjoint_cliques({3, 4, 5, 6})};
  for (const auto& g : fixtures)
    for (int k = 3; k <= 5; ++k)
      for (int b = 1; b <= 3; ++b) f(g, k, b);
}

Outcome pruning() {
  Outcome o;
  std::size_t runs = 0;
  for_each_pruning_run([&](const Graph& g, int k, int b) {
    const auto base = run(g, k, b, Algorithm::baseline);
    const auto gp = run(g, k, b, Algorithm::gp_edge);
    const auto up = run(g, k, b, Algorithm::up_edge);
    ++runs;
    for (const auto* r : {&gp, &up}) {
      o.check(r->iterations.size() == base.iterations.size(), "iteration counts differ");
      for (std::size_t i = 0; i < std::min(r->iterations.size(), base.iterations.size()); ++i) {
        o.check(r->iterations[i].edge == base.iterations[i].edge, "chosen edges differ");
        o.check(r->iterations[i].followers == base.iterations[i].followers, "follower counts differ");
      }
    }
  });
  if (o.pass) o.detail = std::to_string(runs) + " runs";
  return o;
}

Outcome maintenance() {
  Outcome o;
  std::size_t deletions = 0;
  for_each_pruning_run([&](const Graph& g, int k, int b) {
    const auto t = k_truss(g, k);
    if (t.empty()) return;
    // Replay the greedy run on the whole graph: full trussness and the
    // multi-level index, refreshed after each chosen edge.
    const auto r = run(g, k, b, Algorithm::baseline);
    auto tau = truss_decompose(g);
    auto index = build_truss_group_index(g, tau, k);
    EdgeMask alive(g.edge_count(), true);
    for (const auto& it : r.iterations) {
      const auto before = tau;
      const auto after = update_after_deletion(g, before, g.edge(it.edge));
      const auto upd = apply_deletion(g, tau, it.edge);
      alive.reset(it.edge);
      ++deletions;
      o.check(after.tau == tau, "update_after_deletion disagrees with apply_deletion");
      o.check(tau == truss_decompose(g, alive), "trussness differs from recomputation");
      refresh_index(index, upd, g, tau);
      for (int level : index.levels())
        o.check(partition_of(*index.level(level)) == partition_of(build_truss_group_level(g, tau, level)),
                "refreshed level differs from rebuild");
      const auto fresh = build_truss_group_index(g, tau, k);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (tau[e] >= k) o.check(upper_bound(index, e) == upper_bound(fresh, e), "refreshed upper bound differs");
    }
    // UP-Edge's own clamped maintenance, checked after every iteration.
    UpEdgeOptions opts;
    opts.after_iteration = [&](const TrussnessMap& clamped, const GroupIndex& idx) {
      EdgeMask live(g.edge_count());
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!clamped.deleted(e)) live.set(e);
      auto expect = truss_decompose(g, live);
      for (int& x : expect.tau) x = x < k ? TrussnessMap::kDeleted : std::min(x, k + 1);
      o.check(clamped == expect, "UP-Edge trussness differs from recomputation");
      o.check(equivalent(idx, build_truss_group_index(g, clamped, k)), "UP-Edge index differs from rebuild");
    };
    solve_up_edge(t, b, opts);
  });
  if (o.pass) o.detail = std::to_string(deletions) + " deletions replayed";
  return o;
}

Outcome exact_vs_greedy() {
  Outcome o;
  std::mt19937_64 rng(106);
  int trials = 0, strict = 0, compared = 0;
  for (int attempt = 0; trials < 150 && attempt < 20000; ++attempt) {
    const auto g = attempt % 3 ? gen::erdos_renyi(8 + attempt % 6, 0.5, rng) : gen::planted(12, rng);
    const int k = 3 + attempt % 2;
    const auto t = k_truss(g, k);
    if (t.empty() || t.size > 25) continue;
    ++trials;
    const int b = 1 + attempt % 3;
    const auto ex = solve_exact(t, b);
    o.check(ex.followers_total == static_cast<std::int64_t>(oracle::exact_best(g, k, b)), "exact is not optimal");
    const auto removed = static_cast<std::int64_t>(ex.initial_truss_edges - ex.final_truss_edges);
    for (auto a : {Algorithm::baseline, Algorithm::gp_edge, Algorithm::up_edge}) {
      const auto r = run(g, k, b, a);
      o.check(removed >= static_cast<std::int64_t>(r.initial_truss_edges - r.final_truss_edges),
              "greedy removes more edges than exact");
      // A greedy run that emptied the truss early spent fewer deletions,
      // so its follower total is compared on removed edges only.
      if (r.b_effective != b) continue;
      ++compared;
      o.check(ex.followers_total >= r.followers_total, "greedy beats exact");
      strict += ex.followers_total > r.followers_total;
    }
  }
  o.check(strict >= 1, "no strict gap between exact and greedy");

  // Two triangles sharing an edge: each outer edge alone has one follower,
  // both together strand the shared edge too.
  const auto g = gen::build(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
  const auto t = k_truss(g, 3);
  const EdgeId a = helpers::eid(g, 0, 2), b = helpers::eid(g, 0, 3);
  const auto f = [&](std::vector<EdgeId> s) { return delete_and_cascade(t, s).followers.size(); };
  const bool witness = f({a, b}) + f({}) > f({a}) + f({b});
  o.check(witness, "constructed witness is submodular");
  if (o.pass)
    o.detail = std::to_string(trials) + " trials, " + std::to_string(compared) + " full-budget comparisons, " +
               std::to_string(strict) + " strict; witness f(AuB)+f(AnB)=" + std::to_string(f({a, b}) + f({})) +
               " > f(A)+f(B)=" + std::to_string(f({a}) + f({b}));
  return o;
}

struct TrendConfig {
  std::string path;
  int k = 20;
  int b = 5;
  int reps = 5;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome trends(const TrendConfig& cfg) {
  Outcome o;
  Graph g;
  try {
    g = load_edge_list_file(cfg.path);
  } catch (const std::exception& e) {
    o.check(false, std::string("cannot load fixture: ") + e.what());
    return o;
  }
  o.check(g.edge_count() >= 10000 && g.edge_count() <= 100000, "fixture outside 10^4..10^5 edges");

  // (a) totals grow with the budget.
  std::vector<std::int64_t> totals;
  for (int b = 1; b <= 5; ++b) totals.push_back(run(g, cfg.k, b, Algorithm::up_edge).followers_total);
  for (std::size_t i = 1; i < totals.size(); ++i) o.check(totals[i] >= totals[i - 1], "(a) totals drop with b");

  // (b) per-iteration evaluation counts, across b = 1..5.
  std::size_t iterations = 0, ordered = 0;
  for (int b = 1; b <= 5; ++b) {
    const auto base = run(g, cfg.k, b, Algorithm::baseline);
    const auto gp = run(g, cfg.k, b, Algorithm::gp_edge);
    const auto up = run(g, cfg.k, b, Algorithm::up_edge);
    for (std::size_t i = 0; i < up.iterations.size(); ++i) {
      ++iterations;
      ordered += up.iterations[i].candidates_evaluated < gp.iterations[i].candidates_evaluated &&
                 gp.iterations[i].candidates_evaluated < base.iterations[i].candidates_evaluated;
    }
  }
  o.check(iterations > 0 && ordered * 10 >= iterations * 9, "(b) evaluation order holds in < 90% of iterations");

  // (c) median wall-clock at the default (k, b), single-threaded.
  std::vector<double> times[3];
  const Algorithm algs[3] = {Algorithm::up_edge, Algorithm::gp_edge, Algorithm::baseline};
  for (int rep = 0; rep < cfg.reps; ++rep)
    for (int i = 0; i < 3; ++i) {
      const auto start = Clock::now();
      run(g, cfg.k, cfg.b, algs[i]);
      const double secs = seconds_since(start);
      o.check(secs < 600.0, "(c) run exceeded 10 minutes");
      times[i].push_back(secs * 1000.0);
    }
  const double up = median(times[0]), gp = median(times[1]), base = median(times[2]);
  if (o.pass && !(up <= gp && gp <= base)) {
    o.timing_only = true;
    o.check(false, "(c) wall-clock order violated");
  }

  char buf[256];
  std::snprintf(buf, sizeof buf, "totals b=1..5 [%lld %lld %lld %lld %lld]; order in %zu/%zu iterations; "
                "k=%d b=%d median ms up=%.1f gp=%.1f baseline=%.1f",
                static_cast<long long>(totals[0]), static_cast<long long>(totals[1]),
                static_cast<long long>(totals[2]), static_cast<long long>(totals[3]),
                static_cast<long long>(totals[4]), ordered, iterations, cfg.k, cfg.b, up, gp, base);
  o.detail = o.pass ? buf : o.detail + "; " + buf;
  return o;
}

Outcome k5_golden() {
  Outcome o;
  const auto k5 = gen::clique(5);
  for (auto a : {Algorithm::exact, Algorithm::support, Algorithm::baseline, Algorithm::gp_edge, Algorithm::up_edge}) {
    const auto r = run(k5, 5, 1, a);
    o.check(r.followers_total == 9 && r.final_truss_edges == 0, std::string(to_string(a)) + " misses");
  }
  if (o.pass) o.detail = "5 algorithms";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  TrendConfig trend;
  trend.path = KTM_SOCIAL_FIXTURE;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto value = [&] { return i + 1 < argc ? std::atoi(argv[++i]) : 0; };
    if (arg == "--k")
      trend.k = value();
    else if (arg == "--b")
      trend.b = value();
    else if (arg == "--reps")
      trend.reps = std::max(1, value());
    else
      trend.path = arg;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 truss decomposition equals the definitional oracle", decomposition},
      {"2 cascade equals from-scratch recomputation", cascade},
      {"3 group rules: outside Q, group collapse, pruned followers, upper bound", group_rules},
      {"4 pruning exactness: baseline, gp_edge, up_edge agree", pruning},
      {"5 incremental maintenance equals from-scratch", maintenance},
      {"6 exact versus greedy, strict gap and non-submodular witness", exact_vs_greedy},
      {"7 trends on the social fixture", [&] { return trends(trend); }},
      {"8 K5 golden: 9 followers, empty final truss", k5_golden},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass && !o.timing_only;
    std::printf("%s %s (%s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
