#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ktm/bitset.hpp"

namespace ktm {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::int64_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

// Undirected edge in canonical orientation u < v.
struct EdgeKey {
  VertexId u = 0;
  VertexId v = 0;

  static EdgeKey canonical(VertexId a, VertexId b) noexcept {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
  }
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Triangle {
  VertexId a = 0, b = 0, c = 0;  // a < b < c
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

// Immutable undirected simple graph in CSR form.
//
// Every vertex keeps its neighbours sorted, and alongside each neighbour
// the EdgeId of the connecting edge. EdgeIds are dense in [0, m) and
// follow the lexicographic order of the canonical EdgeKeys, so "smallest
// EdgeId" is a stable, label-independent tie-break.
class Graph {
 public:
  Graph() = default;

  // Builds from canonical or non-canonical dense-id pairs. Self-loops and
  // duplicates are dropped. `labels` maps dense ids back to input labels;
  // when empty, the identity labelling is used.
  static Graph from_pairs(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> pairs,
                          std::vector<Label> labels = {});

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId u) const noexcept {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::span<const EdgeId> incident_edges(VertexId u) const noexcept {
    return {incident_.data() + offsets_[u], incident_.data() + offsets_[u + 1]};
  }
  std::size_t degree(VertexId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  const EdgeKey& edge(EdgeId e) const noexcept { return edges_[e]; }
  std::span<const EdgeKey> edges() const noexcept { return edges_; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const noexcept;
  // Throws ContractViolation when the edge does not exist.
  EdgeId edge_id(EdgeKey key) const;

  Label label(VertexId u) const noexcept { return labels_[u]; }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::optional<VertexId> vertex_of_label(Label l) const noexcept;

  // Calls f(w, e_uw, e_vw) for every common neighbour w of edge e's
  // endpoints, in increasing w. Sorted-merge intersection.
  template <class F>
  void for_each_triangle(EdgeId e, F&& f) const {
    const auto [u, v] = edges_[e];
    std::size_t i = offsets_[u], iend = offsets_[u + 1];
    std::size_t j = offsets_[v], jend = offsets_[v + 1];
    while (i < iend && j < jend) {
      const VertexId a = neighbors_[i], b = neighbors_[j];
      if (a < b) {
        ++i;
      } else if (b < a) {
        ++j;
      } else {
        f(a, incident_[i], incident_[j]);
        ++i;
        ++j;
      }
    }
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<EdgeId> incident_;
  std::vector<EdgeKey> edges_;
  std::vector<Label> labels_;
};

// Parses the whitespace edge-list format: one "u v" pair per line, '#'
// comments and blank lines skipped, trailing columns ignored. Labels are
// relabelled densely in ascending label order.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

std::vector<VertexId> common_neighbors(const Graph& g, EdgeKey e);

// Number of triangles containing e whose other two edges are in `alive`.
int support(const Graph& g, EdgeId e, const EdgeMask& alive);
int support(const Graph& g, EdgeKey e, const EdgeMask& alive);

// Per-edge support over the edges in `alive` (0 for edges outside it).
std::vector<int> compute_supports(const Graph& g, const EdgeMask& alive);

std::uint64_t count_triangles(const Graph& g);

}  // namespace ktm
