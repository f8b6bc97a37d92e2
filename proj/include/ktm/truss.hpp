#pragma once

#include <cstdint>
#include <vector>

#include "ktm/graph.hpp"

namespace ktm {

// Edge-centric k-truss of a graph: the surviving edge set plus each
// surviving edge's support inside it. Node sets are derived on demand, so
// isolated vertices never appear.
struct TrussSubgraph {
  const Graph* graph = nullptr;
  int k = 3;
  EdgeMask alive;
  std::vector<int> support;  // meaningful for alive edges only
  std::size_t size = 0;      // number of alive edges

  bool empty() const noexcept { return size == 0; }
  bool contains(EdgeId e) const noexcept { return e < alive.size() && alive.test(e); }
  std::vector<EdgeId> edge_ids() const;
  std::vector<VertexId> vertices() const;
};

// Per-edge trussness. Edges in no 3-truss carry 2; edges removed from the
// graph carry kDeleted.
struct TrussnessMap {
  static constexpr int kDeleted = 0;

  std::vector<int> tau;

  int operator[](EdgeId e) const noexcept { return tau[e]; }
  bool deleted(EdgeId e) const noexcept { return tau[e] == kDeleted; }
  int max() const noexcept;
  // Edges with trussness >= k.
  EdgeMask at_least(int k) const;

  friend bool operator==(const TrussnessMap&, const TrussnessMap&) = default;
};

// Result of removing one edge from a TrussnessMap. `changed` lists every
// surviving edge whose trussness moved, each by exactly -1; `previous[i]`
// holds changed[i]'s old value.
struct TrussUpdate {
  EdgeId deleted = kNoEdge;
  int deleted_trussness = 0;
  std::vector<EdgeId> changed;
  std::vector<int> previous;
};

// Maximal vertex set in which every vertex keeps >= k neighbours, over the
// edges in `within` (all edges when omitted).
VertexMask k_core(const Graph& g, int k);
VertexMask k_core(const Graph& g, int k, const EdgeMask& within);

// Throws ArgumentError for k < 3.
TrussSubgraph k_truss(const Graph& g, int k);
TrussSubgraph k_truss(const Graph& g, int k, const EdgeMask& within);
// The k-truss inside t for k >= t.k, reusing t's supports.
TrussSubgraph k_truss(const TrussSubgraph& t, int k);

TrussnessMap truss_decompose(const Graph& g);
// Decomposition of the subgraph formed by `within`; other edges are marked
// deleted.
TrussnessMap truss_decompose(const Graph& g, const EdgeMask& within);
// Decomposition of the truss's own edge set, reusing its supports.
TrussnessMap truss_decompose(const TrussSubgraph& t);

// Edges of trussness exactly `level` that leave the level-truss described
// by tau when `seed` is removed from it, seed excluded.
std::vector<EdgeId> truss_cascade(const Graph& g, const TrussnessMap& tau, EdgeId seed, int level);

// Deletes e and repairs tau in place by local re-peeling. Throws
// ContractViolation when e is already deleted.
TrussUpdate apply_deletion(const Graph& g, TrussnessMap& tau, EdgeId e);

struct TrussnessAfterDeletion {
  TrussnessMap tau;
  TrussUpdate update;
};
TrussnessAfterDeletion update_after_deletion(const Graph& g, const TrussnessMap& tau, EdgeKey e);

}  // namespace ktm
