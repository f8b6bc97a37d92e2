#include "ktm/cascade.hpp"

#include "ktm/error.hpp"

namespace ktm {

CascadeSimulator::CascadeSimulator(const TrussSubgraph& t)
    : t_(&t), delta_(t.alive.size(), 0), state_(t.alive.size(), 0) {}

std::size_t CascadeSimulator::run(std::span<const EdgeId> b) {
  const TrussSubgraph& t = *t_;
  const Graph& g = *t.graph;
  const int need = t.k - 2;

  removed_.clear();
  for (EdgeId e : b) {
    if (!t.contains(e) || state_[e]) continue;
    state_[e] = 1;
    touched_.push_back(e);
    removed_.push_back(e);
  }
  seeds_ = removed_.size();

  // removed_ doubles as the FIFO queue: entries are processed in order and
  // a triangle is destroyed by whichever of its edges is processed first.
  for (std::size_t i = 0; i < removed_.size(); ++i) {
    const EdgeId x = removed_[i];
    state_[x] = 2;
    g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId c) {
      if (!t.alive.test(a) || !t.alive.test(c) || state_[a] == 2 || state_[c] == 2) return;
      for (EdgeId y : {a, c}) {
        if (delta_[y] == 0 && state_[y] == 0) touched_.push_back(y);
        ++delta_[y];
        if (state_[y] == 0 && t.support[y] - delta_[y] < need) {
          state_[y] = 1;
          removed_.push_back(y);
        }
      }
    });
  }

  for (EdgeId y : touched_) {
    delta_[y] = 0;
    state_[y] = 0;
  }
  touched_.clear();
  return removed_.size() - seeds_;
}

CascadeResult cascade_in_place(TrussSubgraph& t, std::span<const EdgeId> b) {
  const Graph& g = *t.graph;
  const int need = t.k - 2;
  CascadeResult out;
  std::vector<EdgeId> queue;
  std::vector<char> queued(t.alive.size(), 0);
  for (EdgeId e : b) {
    if (!t.contains(e) || queued[e]) continue;
    queued[e] = 1;
    queue.push_back(e);
    out.deleted.push_back(e);
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const EdgeId x = queue[i];
    t.alive.reset(x);
    --t.size;
    if (i >= out.deleted.size()) out.followers.push_back(x);
    g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId c) {
      if (!t.alive.test(a) || !t.alive.test(c)) return;
      for (EdgeId y : {a, c})
        if (--t.support[y] < need && !queued[y]) {
          queued[y] = 1;
          queue.push_back(y);
        }
    });
  }
  for (EdgeId x : queue) t.support[x] = 0;
  return out;
}

DeletionOutcome delete_and_cascade(const TrussSubgraph& t, std::span<const EdgeId> b) {
  DeletionOutcome out;
  out.surviving = t;
  auto res = cascade_in_place(out.surviving, b);
  out.deleted = std::move(res.deleted);
  out.followers = std::move(res.followers);
  return out;
}

std::size_t followers_of_edge(const TrussSubgraph& t, EdgeId e) {
  if (!t.contains(e)) throw ContractViolation("edge not alive in truss");
  CascadeSimulator sim(t);
  return sim.run(e);
}

std::pair<EdgeId, std::size_t> oracle_best_single(const TrussSubgraph& t) {
  if (t.empty()) throw EmptyTruss();
  CascadeSimulator sim(t);
  EdgeId best = kNoEdge;
  std::size_t best_count = 0;
  t.alive.for_each([&](std::size_t e) {
    const std::size_t c = sim.run(static_cast<EdgeId>(e));
    if (best == kNoEdge || c > best_count) {
      best = static_cast<EdgeId>(e);
      best_count = c;
    }
  });
  return {best, best_count};
}

}  // namespace ktm
