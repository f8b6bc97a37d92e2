#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "ktm/truss.hpp"

namespace ktm {

// Maximal set of support-(k-2) edges chained through shared triangles.
// Deleting any member removes all of them, so one representative (the
// smallest EdgeId) stands in for the group.
struct SupportGroup {
  int gid = 0;
  std::vector<EdgeId> members;           // ascending
  std::vector<EdgeId> pruned_followers;  // over-supported edges the group is sure to take down
  EdgeId representative() const noexcept { return members.front(); }
};

struct SupportGroupScan {
  std::vector<SupportGroup> groups;
  std::vector<int> group_of;  // per EdgeId, -1 when not a member
  // Edges that share a triangle with some support-(k-2) edge.
  EdgeMask q;
  // Group representatives plus unpruned over-supported edges of q,
  // ascending.
  std::vector<EdgeId> candidates;
};

SupportGroupScan find_support_groups(const TrussSubgraph& t);

// Partition of trussness-L edges into L-truss groups, for each tracked
// level L, plus for every edge of T_L the groups it is triangle adjacent
// to (its own included).
class GroupIndex {
 public:
  struct Level {
    int level = 3;
    EdgeMask in_truss;                 // edges with trussness >= level
    std::vector<std::int32_t> gid;     // -1 unless trussness == level
    std::unordered_map<std::int32_t, std::vector<EdgeId>> members;
    std::int32_t next_gid = 0;

    std::size_t group_size(std::int32_t g) const { return members.at(g).size(); }
  };

  GroupIndex() = default;
  GroupIndex(const Graph& g, int primary_level, std::map<int, Level> levels)
      : graph_(&g), primary_(primary_level), levels_(std::move(levels)) {}

  const Graph& graph() const noexcept { return *graph_; }
  int primary_level() const noexcept { return primary_; }
  const Level* level(int l) const noexcept {
    auto it = levels_.find(l);
    return it == levels_.end() ? nullptr : &it->second;
  }
  Level* level(int l) noexcept {
    auto it = levels_.find(l);
    return it == levels_.end() ? nullptr : &it->second;
  }
  std::vector<int> levels() const;
  std::map<int, Level>& level_map() noexcept { return levels_; }

 private:
  const Graph* graph_ = nullptr;
  int primary_ = 3;
  std::map<int, Level> levels_;
};

// Throws ArgumentError for k < 3.
GroupIndex build_truss_group_index(const Graph& g, const TrussnessMap& tau, int k);
GroupIndex::Level build_truss_group_level(const Graph& g, const TrussnessMap& tau, int level);

// Level-L groups that e shares an L-triangle with, its own included;
// sorted gids, computed from the graph on demand.
std::vector<std::int32_t> adjacent_groups(const GroupIndex& idx, EdgeId e, int level);

// Sum of the sizes of the primary-level groups e is triangle adjacent to.
// Throws ContractViolation when e is not in the indexed truss.
std::int64_t upper_bound(const GroupIndex& idx, EdgeId e);

// upper_bound for repeated queries against an index whose primary truss
// only shrinks: each edge's level triangles are listed once and filtered
// on later calls.
class UpperBoundCache {
 public:
  explicit UpperBoundCache(const GroupIndex& idx) : idx_(&idx) {}
  std::int64_t operator()(EdgeId e);

 private:
  const GroupIndex* idx_;
  std::unordered_map<EdgeId, std::vector<std::pair<EdgeId, EdgeId>>> triangles_;
  std::vector<std::int32_t> seen_;
};

// Rebuilds only the groups touched by one deletion. With
// track_new_levels, levels that first appear among the changed trussness
// values are built from scratch and tracked from then on.
void refresh_index(GroupIndex& idx, const TrussUpdate& update, const Graph& g,
                   const TrussnessMap& tau, bool track_new_levels = true);

// Index comparison that ignores gid numbering: groups are identified by
// their smallest member.
bool equivalent(const GroupIndex& a, const GroupIndex& b);

}  // namespace ktm
