#include "ktm/truss.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "ktm/error.hpp"

namespace ktm {

std::vector<EdgeId> TrussSubgraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(size);
  alive.for_each([&](std::size_t e) { out.push_back(static_cast<EdgeId>(e)); });
  return out;
}

std::vector<VertexId> TrussSubgraph::vertices() const {
  VertexMask seen(graph ? graph->vertex_count() : 0);
  alive.for_each([&](std::size_t e) {
    seen.set(graph->edge(static_cast<EdgeId>(e)).u);
    seen.set(graph->edge(static_cast<EdgeId>(e)).v);
  });
  std::vector<VertexId> out;
  seen.for_each([&](std::size_t v) { out.push_back(static_cast<VertexId>(v)); });
  return out;
}

int TrussnessMap::max() const noexcept {
  int best = 0;
  for (int t : tau) best = std::max(best, t);
  return best;
}

EdgeMask TrussnessMap::at_least(int k) const {
  EdgeMask mask(tau.size());
  for (std::size_t e = 0; e < tau.size(); ++e)
    if (tau[e] >= k && tau[e] != kDeleted) mask.set(e);
  return mask;
}

VertexMask k_core(const Graph& g, int k) { return k_core(g, k, EdgeMask(g.edge_count(), true)); }

VertexMask k_core(const Graph& g, int k, const EdgeMask& within) {
  const std::size_t n = g.vertex_count();
  std::vector<int> deg(n, 0);
  within.for_each([&](std::size_t e) {
    ++deg[g.edge(static_cast<EdgeId>(e)).u];
    ++deg[g.edge(static_cast<EdgeId>(e)).v];
  });
  VertexMask in(n, true);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] < k) {
      in.reset(v);
      queue.push_back(v);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    auto nb = g.neighbors(v);
    auto inc = g.incident_edges(v);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      const VertexId w = nb[j];
      if (!within.test(inc[j]) || !in.test(w)) continue;
      if (--deg[w] < k) {
        in.reset(w);
        queue.push_back(w);
      }
    }
  }
  return in;
}

TrussSubgraph k_truss(const Graph& g, int k) { return k_truss(g, k, EdgeMask(g.edge_count(), true)); }

namespace {
// Drops edges below t.k's support threshold, cascading, and fixes t.size.
void peel_below(TrussSubgraph& t);
}  // namespace

TrussSubgraph k_truss(const Graph& g, int k, const EdgeMask& within) {
  if (k < 3) throw ArgumentError("k must be at least 3, got " + std::to_string(k));
  const std::size_t m = g.edge_count();
  // A k-truss lives inside the (k-1)-core.
  const VertexMask core = k_core(g, k - 1, within);
  TrussSubgraph t;
  t.graph = &g;
  t.k = k;
  t.alive = EdgeMask(m);
  within.for_each([&](std::size_t e) {
    const auto& key = g.edge(static_cast<EdgeId>(e));
    if (core.test(key.u) && core.test(key.v)) t.alive.set(e);
  });
  t.support = compute_supports(g, t.alive);
  peel_below(t);
  return t;
}

TrussSubgraph k_truss(const TrussSubgraph& t, int k) {
  if (k < t.k) throw ArgumentError("cannot lower the truss level from " + std::to_string(t.k));
  TrussSubgraph out = t;
  out.k = k;
  peel_below(out);
  return out;
}

namespace {

void peel_below(TrussSubgraph& t) {
  const Graph& g = *t.graph;
  const std::size_t m = g.edge_count();
  const int need = t.k - 2;
  std::vector<EdgeId> queue;
  std::vector<char> queued(m, 0);
  t.alive.for_each([&](std::size_t e) {
    if (t.support[e] < need) {
      queued[e] = 1;
      queue.push_back(static_cast<EdgeId>(e));
    }
  });
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const EdgeId x = queue[i];
    t.alive.reset(x);
    g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId b) {
      if (!t.alive.test(a) || !t.alive.test(b)) return;
      for (EdgeId y : {a, b})
        if (--t.support[y] < need && !queued[y]) {
          queued[y] = 1;
          queue.push_back(y);
        }
    });
  }
  for (std::size_t e = 0; e < m; ++e)
    if (!t.alive.test(e)) t.support[e] = 0;
  t.size = t.alive.count();
}

}  // namespace

TrussnessMap truss_decompose(const Graph& g) { return truss_decompose(g, EdgeMask(g.edge_count(), true)); }

namespace {

TrussnessMap peel(const Graph& g, const EdgeMask& within, std::vector<int> sup) {
  const std::size_t m = g.edge_count();
  TrussnessMap out;
  out.tau.assign(m, TrussnessMap::kDeleted);
  EdgeMask present = within;

  // Bucket queue over support: `order` holds the edges sorted by current
  // support, `start[s]` is where bucket s begins among the unpeeled edges.
  // Decrementing an edge swaps it to the front of its bucket and shrinks
  // the bucket boundary, so each triangle costs O(1).
  int max_sup = 0;
  within.for_each([&](std::size_t e) { max_sup = std::max(max_sup, sup[e]); });
  std::vector<std::size_t> start(static_cast<std::size_t>(max_sup) + 2, 0);
  within.for_each([&](std::size_t e) { ++start[sup[e] + 1]; });
  for (std::size_t s = 1; s < start.size(); ++s) start[s] += start[s - 1];
  std::vector<EdgeId> order(start.back());
  std::vector<std::size_t> pos(m, 0);
  {
    auto next = start;
    within.for_each([&](std::size_t e) {
      pos[e] = next[sup[e]]++;
      order[pos[e]] = static_cast<EdgeId>(e);
    });
  }

  auto decrement = [&](EdgeId x, int floor) {
    const int s = sup[x];
    if (s <= floor) return;
    const std::size_t first = start[s];
    const EdgeId y = order[first];
    std::swap(order[first], order[pos[x]]);
    pos[y] = pos[x];
    pos[x] = first;
    ++start[s];
    --sup[x];
  };

  int level = 2;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const EdgeId e = order[i];
    const int s = sup[e];
    level = std::max(level, s + 2);
    out.tau[e] = level;
    present.reset(e);
    g.for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
      if (!present.test(a) || !present.test(b)) return;
      decrement(a, s);
      decrement(b, s);
    });
  }
  return out;
}

}  // namespace

TrussnessMap truss_decompose(const Graph& g, const EdgeMask& within) {
  return peel(g, within, compute_supports(g, within));
}

TrussnessMap truss_decompose(const TrussSubgraph& t) { return peel(*t.graph, t.alive, t.support); }

namespace {

// Removes `seed` from the level-L truss of the graph described by `tau`
// and returns the edges that fall out with it (excluding the seed). Only
// edges with trussness exactly L can fall out, since one deletion lowers
// trussness by at most one; their supports are computed lazily.
std::vector<EdgeId> cascade_at_level(const Graph& g, const TrussnessMap& tau, EdgeId seed, int level) {
  struct State {
    int support = 0;
    bool queued = false;
  };
  std::unordered_map<EdgeId, State> states;
  std::unordered_map<EdgeId, bool> processed;
  auto in_level = [&](EdgeId x) { return tau[x] >= level; };
  auto state_of = [&](EdgeId y) -> State& {
    auto [it, fresh] = states.try_emplace(y);
    if (fresh) {
      int s = 0;
      g.for_each_triangle(y, [&](VertexId, EdgeId a, EdgeId b) {
        if (in_level(a) && in_level(b)) ++s;
      });
      it->second.support = s;
    }
    return it->second;
  };

  std::vector<EdgeId> queue{seed};
  std::vector<EdgeId> fallen;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const EdgeId x = queue[i];
    processed[x] = true;
    if (x != seed) fallen.push_back(x);
    g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId b) {
      if (!in_level(a) || !in_level(b) || processed.count(a) || processed.count(b)) return;
      for (EdgeId y : {a, b}) {
        if (tau[y] != level) continue;
        State& st = state_of(y);
        if (--st.support < level - 2 && !st.queued) {
          st.queued = true;
          queue.push_back(y);
        }
      }
    });
  }
  return fallen;
}

}  // namespace

std::vector<EdgeId> truss_cascade(const Graph& g, const TrussnessMap& tau, EdgeId seed, int level) {
  if (seed >= tau.tau.size() || tau[seed] < level) throw ContractViolation("seed outside the level truss");
  return cascade_at_level(g, tau, seed, level);
}

TrussUpdate apply_deletion(const Graph& g, TrussnessMap& tau, EdgeId e) {
  if (e >= tau.tau.size() || tau.deleted(e)) throw ContractViolation("edge already deleted");
  TrussUpdate update;
  update.deleted = e;
  update.deleted_trussness = tau[e];

  // Levels at which e touches a trussness-L edge inside an L-triangle; the
  // cascade at any other level is empty.
  std::vector<char> level_hit(static_cast<std::size_t>(tau[e]) + 1, 0);
  g.for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
    if (tau.deleted(a) || tau.deleted(b)) return;
    const int lo = std::min({tau[a], tau[b], tau[e]});
    for (EdgeId y : {a, b})
      if (tau[y] >= 3 && tau[y] <= lo) level_hit[static_cast<std::size_t>(tau[y])] = 1;
  });

  for (int level = 3; level <= tau[e]; ++level) {
    if (!level_hit[static_cast<std::size_t>(level)]) continue;
    for (EdgeId x : cascade_at_level(g, tau, e, level)) {
      update.changed.push_back(x);
      update.previous.push_back(level);
    }
  }
  // Every cascade ran against the old values; apply them together.
  for (EdgeId x : update.changed) tau.tau[x] -= 1;
  tau.tau[e] = TrussnessMap::kDeleted;
  return update;
}

TrussnessAfterDeletion update_after_deletion(const Graph& g, const TrussnessMap& tau, EdgeKey e) {
  TrussnessAfterDeletion out{tau, {}};
  out.update = apply_deletion(g, out.tau, g.edge_id(e));
  return out;
}

}  // namespace ktm
