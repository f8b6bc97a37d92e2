#include "ktm/minimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <unordered_map>

#include "ktm/error.hpp"

namespace ktm {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::support: return "support";
    case Algorithm::baseline: return "baseline";
    case Algorithm::gp_edge: return "gp_edge";
    case Algorithm::up_edge: return "up_edge";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::exact;
  if (name == "support") return Algorithm::support;
  if (name == "baseline") return Algorithm::baseline;
  if (name == "gp_edge" || name == "gp") return Algorithm::gp_edge;
  if (name == "up_edge" || name == "up") return Algorithm::up_edge;
  throw ArgumentError("unknown algorithm '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (k < 3) throw ArgumentError("k must be at least 3, got " + std::to_string(k));
  if (b < 1) throw ArgumentError("b must be at least 1, got " + std::to_string(b));
}

std::vector<EdgeId> MinimizationReport::chosen() const {
  std::vector<EdgeId> out;
  for (const auto& it : iterations) out.push_back(it.edge);
  return out;
}

bool MinimizationReport::accounting_holds() const noexcept {
  std::int64_t sum = 0;
  for (const auto& it : iterations) sum += it.followers;
  return sum == followers_total &&
         followers_total + b_effective ==
             static_cast<std::int64_t>(initial_truss_edges) - static_cast<std::int64_t>(final_truss_edges);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t b) noexcept {
  if (b > n) return 0;
  b = std::min(b, n - b);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r = r * (n - b + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// One cascade simulator per worker over the same snapshot.
class Evaluator {
 public:
  Evaluator(const TrussSubgraph& t, unsigned threads) {
    for (unsigned i = 0; i < threads; ++i) sims_.emplace_back(t);
  }

  unsigned workers() const noexcept { return static_cast<unsigned>(sims_.size()); }

  // counts[i] = |F(edges[i])|; when keep_followers, also the follower sets.
  void evaluate(std::span<const EdgeId> edges, std::vector<std::size_t>& counts,
                std::vector<std::vector<EdgeId>>* followers) {
    counts.assign(edges.size(), 0);
    if (followers) followers->assign(edges.size(), {});
    auto work = [&](CascadeSimulator& sim, std::size_t i) {
      counts[i] = sim.run(edges[i]);
      if (followers) (*followers)[i].assign(sim.followers().begin(), sim.followers().end());
    };
    if (sims_.size() == 1 || edges.size() < 2) {
      for (std::size_t i = 0; i < edges.size(); ++i) work(sims_[0], i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t nthreads = std::min(sims_.size(), edges.size());
    for (std::size_t w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = next++; i < edges.size(); i = next++) work(sims_[w], i);
      });
    for (auto& th : pool) th.join();
  }

 private:
  std::vector<CascadeSimulator> sims_;
};

struct Choice {
  EdgeId edge = kNoEdge;
  std::int64_t followers = -1;  // -1: not known before the commit
  std::size_t candidates_total = 0;
  std::size_t candidates_evaluated = 0;
};

EdgeId smallest_alive(const TrussSubgraph& t) {
  EdgeId out = kNoEdge;
  t.alive.for_each([&](std::size_t e) {
    if (out == kNoEdge) out = static_cast<EdgeId>(e);
  });
  return out;
}

// Shared greedy loop: pick, delete, cascade, record.
class GreedyRun {
 public:
  GreedyRun(const TrussSubgraph& t0, int b, Algorithm alg) : t(t0), budget_(b) {
    report.config.k = t0.k;
    report.config.b = b;
    report.config.algorithm = alg;
    report.initial_truss_edges = t0.size;
  }

  bool more() const { return static_cast<int>(report.iterations.size()) < budget_ && !t.empty(); }

  CascadeResult commit(const Choice& c, Clock::time_point started) {
    const EdgeId e = c.edge;
    CascadeResult res = cascade_in_place(t, std::span<const EdgeId>(&e, 1));
    if (res.deleted.size() != 1) throw ContractViolation("solver chose an edge outside the truss");
    const auto followers = static_cast<std::int64_t>(res.followers.size());
    if (c.followers >= 0 && c.followers != followers)
      throw ContractViolation("follower count changed between evaluation and commit");
    const auto& key = t.graph->edge(e);
    report.iterations.push_back(IterationRecord{e, t.graph->label(key.u), t.graph->label(key.v), followers,
                                                c.candidates_total, c.candidates_evaluated, ms_since(started)});
    return res;
  }

  MinimizationReport finish() {
    report.final_truss_edges = t.size;
    report.b_effective = static_cast<int>(report.iterations.size());
    report.followers_total = 0;
    for (const auto& it : report.iterations) report.followers_total += it.followers;
    return std::move(report);
  }

  TrussSubgraph t;
  MinimizationReport report;

 private:
  int budget_;
};

// Tracks the running argmax under the "most followers, then smallest
// EdgeId" order.
struct Best {
  EdgeId edge = kNoEdge;
  std::int64_t count = -1;

  void offer(EdgeId e, std::int64_t c) {
    if (c > count || (c == count && e < edge)) {
      edge = e;
      count = c;
    }
  }
};

// Pruned candidates the group rules skipped may still tie the winner and
// beat it on EdgeId. Pruned followers x of a group satisfy
// |F(x)| <= |F(rep)| <= best, so only x with id below the winner whose
// dominating representatives were not seen to fall short need a look.
void repair_tie(const SupportGroupScan& scan, const std::unordered_map<EdgeId, std::int64_t>& evaluated,
                const std::function<bool(EdgeId)>& may_reach, CascadeSimulator& sim, Best& best,
                std::size_t& evaluations) {
  if (best.count <= 0) return;
  std::unordered_map<EdgeId, bool> eligible;
  for (const auto& grp : scan.groups) {
    auto it = evaluated.find(grp.representative());
    const bool falls_short = it != evaluated.end() && it->second < best.count;
    for (EdgeId x : grp.pruned_followers) {
      if (x >= best.edge) break;
      auto [slot, fresh] = eligible.try_emplace(x, true);
      if (falls_short) slot->second = false;
    }
  }
  std::vector<EdgeId> order;
  for (auto [x, ok] : eligible)
    if (ok && !evaluated.count(x) && may_reach(x)) order.push_back(x);
  std::sort(order.begin(), order.end());
  for (EdgeId x : order) {
    const auto c = static_cast<std::int64_t>(sim.run(x));
    ++evaluations;
    if (c > best.count) throw ContractViolation("pruned edge beats the group representative");
    if (c == best.count) {
      best.edge = x;
      return;
    }
  }
}

}  // namespace

MinimizationReport solve_baseline(const TrussSubgraph& t0, int b, unsigned threads) {
  GreedyRun run(t0, b, Algorithm::baseline);
  Evaluator eval(run.t, resolve_threads(threads));
  std::vector<std::size_t> counts;
  while (run.more()) {
    const auto started = Clock::now();
    const std::vector<EdgeId> alive = run.t.edge_ids();
    eval.evaluate(alive, counts, nullptr);
    Best best;
    for (std::size_t i = 0; i < alive.size(); ++i) best.offer(alive[i], static_cast<std::int64_t>(counts[i]));
    run.commit({best.edge, best.count, alive.size(), alive.size()}, started);
  }
  return run.finish();
}

namespace {

// Candidate scan shared by GP-Edge and UP-Edge. `order` is the evaluation
// order; `bound` (optional) gives an upper bound per candidate and enables
// early termination once no remaining candidate can reach the best.
Choice scan_candidates(const TrussSubgraph& t, const SupportGroupScan& scan, const std::vector<EdgeId>& order,
                       const std::function<std::int64_t(EdgeId)>* bound, Evaluator& eval, CascadeSimulator& serial) {
  Choice choice;
  choice.candidates_total = scan.candidates.size();
  if (scan.candidates.empty()) {
    choice.edge = smallest_alive(t);
    choice.followers = 0;
    return choice;
  }

  // dominated_by[c]: smallest evaluated edge whose followers contain c.
  std::unordered_map<EdgeId, EdgeId> dominated_by;
  std::unordered_map<EdgeId, std::int64_t> evaluated;
  Best best;
  std::vector<EdgeId> batch;
  std::vector<std::size_t> counts;
  std::vector<std::vector<EdgeId>> follower_sets;

  auto skip = [&](EdgeId c) {
    if (bound) {
      const std::int64_t ub = (*bound)(c);
      if (ub == 0) return true;
      if (ub < best.count || (ub == best.count && c > best.edge)) return true;
    }
    auto it = dominated_by.find(c);
    if (it != dominated_by.end()) {
      // |F(c)| <= |F(d)|; c can only matter if it ties d and wins on id.
      const EdgeId d = it->second;
      if (d < c || evaluated.at(d) < best.count) return true;
    }
    return false;
  };

  std::size_t pos = 0;
  while (pos < order.size()) {
    if (bound && best.count >= 0 && (*bound)(order[pos]) < best.count) break;
    batch.clear();
    while (pos < order.size() && batch.size() < eval.workers()) {
      const EdgeId c = order[pos++];
      if (!skip(c)) batch.push_back(c);
      if (bound && pos < order.size() && best.count >= 0 && (*bound)(order[pos]) < best.count) break;
    }
    if (batch.empty()) continue;
    eval.evaluate(batch, counts, &follower_sets);
    choice.candidates_evaluated += batch.size();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const EdgeId c = batch[i];
      const auto n = static_cast<std::int64_t>(counts[i]);
      evaluated[c] = n;
      best.offer(c, n);
      for (EdgeId f : follower_sets[i]) {
        auto [it, fresh] = dominated_by.try_emplace(f, c);
        if (!fresh && c < it->second) it->second = c;
      }
    }
  }

  if (best.count <= 0) {
    // Nothing cascades: every alive edge ties at zero.
    choice.edge = smallest_alive(t);
    choice.followers = 0;
    return choice;
  }
  std::function<bool(EdgeId)> may_reach = [&](EdgeId x) {
    return !bound || (*bound)(x) >= best.count;
  };
  repair_tie(scan, evaluated, may_reach, serial, best, choice.candidates_evaluated);
  choice.edge = best.edge;
  choice.followers = best.count;
  return choice;
}

}  // namespace

MinimizationReport solve_gp_edge(const TrussSubgraph& t0, int b, unsigned threads) {
  GreedyRun run(t0, b, Algorithm::gp_edge);
  Evaluator eval(run.t, resolve_threads(threads));
  CascadeSimulator serial(run.t);
  while (run.more()) {
    const auto started = Clock::now();
    const SupportGroupScan scan = find_support_groups(run.t);
    const Choice c = scan_candidates(run.t, scan, scan.candidates, nullptr, eval, serial);
    run.commit(c, started);
  }
  return run.finish();
}

MinimizationReport solve_up_edge(const TrussSubgraph& t0, int b, const UpEdgeOptions& opts) {
  GreedyRun run(t0, b, Algorithm::up_edge);
  const Graph& g = *t0.graph;
  const int k = t0.k;
  Evaluator eval(run.t, resolve_threads(opts.threads));
  CascadeSimulator serial(run.t);

  const auto setup = Clock::now();
  // Only levels k and k+1 matter for the level-k groups, so trussness is
  // kept clamped: k+1 on T_{k+1}, k on the rest of T_k, deleted elsewhere.
  TrussnessMap tau;
  tau.tau.assign(g.edge_count(), TrussnessMap::kDeleted);
  run.t.alive.for_each([&](std::size_t e) { tau.tau[e] = k; });
  k_truss(run.t, k + 1).alive.for_each([&](std::size_t e) { tau.tau[e] = k + 1; });
  GroupIndex index = build_truss_group_index(g, tau, k);
  UpperBoundCache cached_bound(index);
  run.report.setup_ms = ms_since(setup);

  while (run.more()) {
    const auto started = Clock::now();
    const SupportGroupScan scan = find_support_groups(run.t);
    std::unordered_map<EdgeId, std::int64_t> bounds;
    for (EdgeId c : scan.candidates) bounds[c] = cached_bound(c);
    std::vector<EdgeId> order = scan.candidates;
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId c) { return bounds[a] > bounds[c]; });
    std::function<std::int64_t(EdgeId)> bound = [&](EdgeId x) {
      auto it = bounds.find(x);
      return it != bounds.end() ? it->second : cached_bound(x);
    };

    const Choice c = scan_candidates(run.t, scan, order, &bound, eval, serial);
    const CascadeResult res = run.commit(c, started);

    // The level-k cascade is the committed follower set; only T_{k+1}
    // needs its own cascade.
    TrussUpdate update;
    update.deleted = c.edge;
    update.deleted_trussness = tau[c.edge];
    if (tau[c.edge] == k + 1)
      for (EdgeId x : truss_cascade(g, tau, c.edge, k + 1)) {
        update.changed.push_back(x);
        update.previous.push_back(k + 1);
      }
    for (EdgeId f : res.followers) {
      if (tau[f] != k) throw ContractViolation("follower outside the trussness-k layer");
      update.changed.push_back(f);
      update.previous.push_back(k);
    }
    for (std::size_t i = 0; i < update.changed.size(); ++i)
      tau.tau[update.changed[i]] = update.previous[i] == k ? TrussnessMap::kDeleted : k;
    tau.tau[c.edge] = TrussnessMap::kDeleted;
    if (opts.full_index_rebuild)
      index = build_truss_group_index(g, tau, k);
    else
      refresh_index(index, update, g, tau, /*track_new_levels=*/false);
    run.report.iterations.back().time_ms = ms_since(started);
    if (opts.after_iteration) opts.after_iteration(tau, index);
  }
  return run.finish();
}

MinimizationReport solve_support(const TrussSubgraph& t0, int b) {
  GreedyRun run(t0, b, Algorithm::support);
  while (run.more()) {
    const auto started = Clock::now();
    const TrussSubgraph& t = run.t;
    EdgeId weakest = kNoEdge;
    t.alive.for_each([&](std::size_t e) {
      if (weakest == kNoEdge || t.support[e] < t.support[weakest]) weakest = static_cast<EdgeId>(e);
    });
    EdgeId pick = kNoEdge;
    std::size_t adjacent = 0;
    t.graph->for_each_triangle(weakest, [&](VertexId, EdgeId a, EdgeId c) {
      if (!t.alive.test(a) || !t.alive.test(c)) return;
      for (EdgeId y : {a, c}) {
        ++adjacent;
        if (pick == kNoEdge || t.support[y] < t.support[pick] || (t.support[y] == t.support[pick] && y < pick))
          pick = y;
      }
    });
    // Inside a k-truss with k >= 3 every edge sits in a triangle.
    if (pick == kNoEdge) throw ContractViolation("minimum-support edge has no triangle");
    run.commit({pick, -1, adjacent, 0}, started);
  }
  return run.finish();
}

MinimizationReport solve_exact(const TrussSubgraph& t0, int b, std::uint64_t cap) {
  const auto started = Clock::now();
  const std::vector<EdgeId> edges = t0.edge_ids();
  const std::size_t n = edges.size();
  const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(b), n);
  const std::uint64_t combos = binomial(n, size);
  if (combos > cap)
    throw ExactCapExceeded("exact search needs C(" + std::to_string(n) + ", " + std::to_string(size) +
                           ") subsets, above the cap of " + std::to_string(cap) +
                           "; use a heuristic algorithm (baseline, gp_edge or up_edge)");

  MinimizationReport report;
  report.config.k = t0.k;
  report.config.b = b;
  report.config.algorithm = Algorithm::exact;
  report.initial_truss_edges = t0.size;

  // Lexicographic enumeration of index combinations; only a strictly better
  // set replaces the incumbent, so the first maximiser wins.
  CascadeSimulator sim(t0);
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  std::vector<EdgeId> current(size), best_set;
  std::int64_t best = -1;
  std::uint64_t evaluated = 0;
  while (size > 0) {
    for (std::size_t i = 0; i < size; ++i) current[i] = edges[pick[i]];
    const auto c = static_cast<std::int64_t>(sim.run(current));
    ++evaluated;
    if (c > best) {
      best = c;
      best_set = current;
    }
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }

  // Replay the set one edge at a time so each record carries its marginal
  // followers; members of the set never count as followers.
  TrussSubgraph t = t0;
  std::vector<char> in_set(t.alive.size(), 0);
  for (EdgeId e : best_set) in_set[e] = 1;
  for (std::size_t i = 0; i < best_set.size(); ++i) {
    const EdgeId e = best_set[i];
    const CascadeResult res = cascade_in_place(t, std::span<const EdgeId>(&e, 1));
    std::int64_t followers = 0;
    for (EdgeId f : res.followers)
      if (!in_set[f]) ++followers;
    const auto& key = t.graph->edge(e);
    report.iterations.push_back(IterationRecord{e, t.graph->label(key.u), t.graph->label(key.v), followers,
                                                i == 0 ? static_cast<std::size_t>(combos) : 0,
                                                i == 0 ? static_cast<std::size_t>(evaluated) : 0,
                                                i == 0 ? ms_since(started) : 0.0});
    report.followers_total += followers;
  }
  report.b_effective = static_cast<int>(best_set.size());
  report.final_truss_edges = t.size;
  return report;
}

MinimizationReport solve(const Graph& g, const SolverConfig& cfg) {
  cfg.validate();
  const auto started = Clock::now();
  const TrussSubgraph t = k_truss(g, cfg.k);
  const double truss_ms = ms_since(started);

  MinimizationReport report;
  if (t.empty()) {
    report.warnings.emplace_back("empty truss");
  } else {
    switch (cfg.algorithm) {
      case Algorithm::exact: report = solve_exact(t, cfg.b, cfg.exact_cap); break;
      case Algorithm::support: report = solve_support(t, cfg.b); break;
      case Algorithm::baseline: report = solve_baseline(t, cfg.b, cfg.threads); break;
      case Algorithm::gp_edge: report = solve_gp_edge(t, cfg.b, cfg.threads); break;
      case Algorithm::up_edge: {
        UpEdgeOptions opts;
        opts.threads = cfg.threads;
        opts.full_index_rebuild = cfg.full_index_rebuild;
        report = solve_up_edge(t, cfg.b, opts);
        break;
      }
    }
    if (report.b_effective < cfg.b)
      report.warnings.push_back("truss emptied after " + std::to_string(report.b_effective) + " deletion(s)");
  }
  report.config = cfg;
  report.setup_ms += truss_ms;
  report.total_ms = ms_since(started);
  return report;
}

bool verify_equivalence(const Graph& g, int k, int b) {
  const TrussSubgraph t = k_truss(g, k);
  if (t.empty()) return true;
  const auto base = solve_baseline(t, b);
  const auto gp = solve_gp_edge(t, b);
  const auto up = solve_up_edge(t, b);
  auto same = [](const MinimizationReport& x, const MinimizationReport& y) {
    if (x.iterations.size() != y.iterations.size()) return false;
    for (std::size_t i = 0; i < x.iterations.size(); ++i)
      if (x.iterations[i].edge != y.iterations[i].edge || x.iterations[i].followers != y.iterations[i].followers)
        return false;
    return true;
  };
  return same(base, gp) && same(base, up);
}

}  // namespace ktm
