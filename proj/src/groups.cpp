#include "ktm/groups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "ktm/error.hpp"

namespace ktm {

SupportGroupScan find_support_groups(const TrussSubgraph& t) {
  const Graph& g = *t.graph;
  const std::size_t m = t.alive.size();
  const int need = t.k - 2;

  SupportGroupScan scan;
  scan.group_of.assign(m, -1);
  scan.q = EdgeMask(m);
  std::vector<char> pruned(m, 0);
  // Per-group triangle coverage of over-supported edges.
  std::vector<int> coverage(m, 0);
  std::vector<EdgeId> covered;

  auto is_p = [&](EdgeId x) { return t.support[x] == need; };

  t.alive.for_each([&](std::size_t start) {
    const auto s = static_cast<EdgeId>(start);
    if (!is_p(s) || scan.group_of[s] != -1) return;
    SupportGroup group;
    group.gid = static_cast<int>(scan.groups.size());
    std::vector<EdgeId>& queue = group.members;
    queue.push_back(s);
    scan.group_of[s] = group.gid;

    for (std::size_t i = 0; i < queue.size(); ++i) {
      const EdgeId member = queue[i];
      g.for_each_triangle(member, [&](VertexId, EdgeId a, EdgeId b) {
        if (!t.alive.test(a) || !t.alive.test(b)) return;
        scan.q.set(a);
        scan.q.set(b);
        const bool a_p = is_p(a), b_p = is_p(b);
        for (EdgeId y : {a, b})
          if (is_p(y) && scan.group_of[y] == -1) {
            scan.group_of[y] = group.gid;
            queue.push_back(y);
          }
        // A triangle costs an over-supported edge one unit of support no
        // matter how many group edges it holds; count it from its
        // smallest group edge only.
        if ((a_p && a < member) || (b_p && b < member)) return;
        for (EdgeId y : {a, b}) {
          if (is_p(y)) continue;
          if (coverage[y]++ == 0) covered.push_back(y);
        }
      });
    }

    for (EdgeId y : covered) {
      const int w = t.support[y];
      if (coverage[y] > w - t.k + 2) {
        group.pruned_followers.push_back(y);
        pruned[y] = 1;
      }
      coverage[y] = 0;
    }
    covered.clear();
    std::sort(group.members.begin(), group.members.end());
    std::sort(group.pruned_followers.begin(), group.pruned_followers.end());
    scan.groups.push_back(std::move(group));
  });

  std::vector<char> is_candidate(m, 0);
  for (const auto& grp : scan.groups) is_candidate[grp.representative()] = 1;
  scan.q.for_each([&](std::size_t x) {
    if (t.support[x] > need && !pruned[x]) is_candidate[x] = 1;
  });
  for (std::size_t x = 0; x < m; ++x)
    if (is_candidate[x]) scan.candidates.push_back(static_cast<EdgeId>(x));
  return scan;
}

std::vector<int> GroupIndex::levels() const {
  std::vector<int> out;
  for (const auto& [l, _] : levels_) out.push_back(l);
  return out;
}

namespace {

// Assigns a fresh gid to every trussness-L edge reachable from seed
// through L-triangles. Reaching an edge that already has a different gid
// means the caller dissolved too little.
// Labels the group of `seed`. With `merge`, existing groups met on the way
// are absorbed wholesale; their own triangles are not re-explored.
void grow_group(const Graph& g, const TrussnessMap& tau, GroupIndex::Level& lv, EdgeId seed, bool merge = false) {
  const int level = lv.level;
  const std::int32_t gid = lv.next_gid++;
  auto& members = lv.members[gid];
  lv.gid[seed] = gid;
  members.push_back(seed);
  std::vector<EdgeId> queue{seed};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    g.for_each_triangle(queue[i], [&](VertexId, EdgeId a, EdgeId b) {
      if (tau[a] < level || tau[b] < level) return;
      for (EdgeId y : {a, b}) {
        if (tau[y] != level) continue;
        const std::int32_t other = lv.gid[y];
        if (other == -1) {
          lv.gid[y] = gid;
          members.push_back(y);
          queue.push_back(y);
        } else if (other != gid) {
          if (!merge) throw ContractViolation("truss group index out of sync with trussness");
          auto node = lv.members.extract(other);
          for (EdgeId z : node.mapped()) lv.gid[z] = gid;
          members.insert(members.end(), node.mapped().begin(), node.mapped().end());
        }
      }
    });
  }
  std::sort(members.begin(), members.end());
}

// Group `gid` lost edges or triangles; `ends` are its surviving members
// that sat in a lost triangle. Every piece it may fall into contains one of
// them, so searches from all ends run in lockstep, fuse when they meet, and
// a search that runs dry is a piece of its own. The work is bounded by the
// pieces split off, not by the size of the group.
void split_group(const Graph& g, const TrussnessMap& tau, GroupIndex::Level& lv, std::int32_t gid,
                 std::vector<EdgeId> ends) {
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  if (ends.size() < 2) return;

  const int level = lv.level;
  struct Search {
    std::vector<EdgeId> seen;
    std::vector<EdgeId> frontier;
    int parent;
    bool done = false;
  };
  std::vector<Search> searches;
  std::unordered_map<EdgeId, int> owner;
  for (EdgeId x : ends) {
    owner.emplace(x, static_cast<int>(searches.size()));
    searches.push_back({{x}, {x}, static_cast<int>(searches.size())});
  }
  auto find = [&](int i) {
    while (searches[i].parent != i) i = searches[i].parent = searches[searches[i].parent].parent;
    return i;
  };

  std::size_t live = searches.size();
  while (live > 1) {
    for (std::size_t i = 0; i < searches.size() && live > 1; ++i) {
      if (searches[i].parent != static_cast<int>(i) || searches[i].done) continue;
      if (searches[i].frontier.empty()) {
        searches[i].done = true;
        --live;
        const std::int32_t piece = lv.next_gid++;
        auto& members = lv.members[piece];
        for (EdgeId x : searches[i].seen) lv.gid[x] = piece;
        members = std::move(searches[i].seen);
        std::sort(members.begin(), members.end());
        continue;
      }
      const EdgeId x = searches[i].frontier.back();
      searches[i].frontier.pop_back();
      g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId b) {
        if (tau[a] < level || tau[b] < level) return;
        for (EdgeId y : {a, b}) {
          if (tau[y] != level || lv.gid[y] != gid) continue;
          auto [it, fresh] = owner.try_emplace(y, static_cast<int>(i));
          if (fresh) {
            searches[i].seen.push_back(y);
            searches[i].frontier.push_back(y);
            continue;
          }
          const int r = find(it->second);
          if (r == static_cast<int>(i)) continue;
          auto& mine = searches[i];
          auto& theirs = searches[r];
          mine.seen.insert(mine.seen.end(), theirs.seen.begin(), theirs.seen.end());
          mine.frontier.insert(mine.frontier.end(), theirs.frontier.begin(), theirs.frontier.end());
          theirs.seen.clear();
          theirs.frontier.clear();
          theirs.parent = static_cast<int>(i);
          --live;
        }
      });
    }
  }
  auto& rest = lv.members.at(gid);
  std::erase_if(rest, [&](EdgeId x) { return lv.gid[x] != gid; });
}

}  // namespace

GroupIndex::Level build_truss_group_level(const Graph& g, const TrussnessMap& tau, int level) {
  if (level < 3) throw ArgumentError("k must be at least 3, got " + std::to_string(level));
  const std::size_t m = g.edge_count();
  GroupIndex::Level lv;
  lv.level = level;
  lv.in_truss = tau.at_least(level);
  lv.gid.assign(m, -1);
  lv.in_truss.for_each([&](std::size_t e) {
    if (tau[static_cast<EdgeId>(e)] == level && lv.gid[e] == -1) grow_group(g, tau, lv, static_cast<EdgeId>(e));
  });
  return lv;
}

GroupIndex build_truss_group_index(const Graph& g, const TrussnessMap& tau, int k) {
  std::map<int, GroupIndex::Level> levels;
  levels.emplace(k, build_truss_group_level(g, tau, k));
  return GroupIndex(g, k, std::move(levels));
}

namespace {

template <class F>
void for_each_adjacent_group(const GroupIndex& idx, EdgeId e, int level, F&& f) {
  const auto* lv = idx.level(level);
  if (!lv || e >= lv->in_truss.size() || !lv->in_truss.test(e))
    throw ContractViolation("edge unknown to truss group index");
  if (lv->gid[e] >= 0) f(lv->gid[e]);
  idx.graph().for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
    if (!lv->in_truss.test(a) || !lv->in_truss.test(b)) return;
    if (lv->gid[a] >= 0) f(lv->gid[a]);
    if (lv->gid[b] >= 0) f(lv->gid[b]);
  });
}

}  // namespace

std::vector<std::int32_t> adjacent_groups(const GroupIndex& idx, EdgeId e, int level) {
  std::vector<std::int32_t> adj;
  for_each_adjacent_group(idx, e, level, [&](std::int32_t gid) { adj.push_back(gid); });
  std::sort(adj.begin(), adj.end());
  adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  return adj;
}

std::int64_t upper_bound(const GroupIndex& idx, EdgeId e) {
  const auto* lv = idx.level(idx.primary_level());
  // Few distinct groups sit around one edge; a linear probe beats sorting.
  thread_local std::vector<std::int32_t> seen;
  seen.clear();
  std::int64_t bound = 0;
  for_each_adjacent_group(idx, e, idx.primary_level(), [&](std::int32_t gid) {
    if (std::find(seen.begin(), seen.end(), gid) != seen.end()) return;
    seen.push_back(gid);
    bound += static_cast<std::int64_t>(lv->group_size(gid));
  });
  return bound;
}

std::int64_t UpperBoundCache::operator()(EdgeId e) {
  const int level = idx_->primary_level();
  const auto* lv = idx_->level(level);
  if (!lv || e >= lv->in_truss.size() || !lv->in_truss.test(e))
    throw ContractViolation("edge unknown to truss group index");
  auto [it, fresh] = triangles_.try_emplace(e);
  if (fresh)
    idx_->graph().for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
      if (lv->in_truss.test(a) && lv->in_truss.test(b)) it->second.emplace_back(a, b);
    });
  seen_.clear();
  std::int64_t bound = 0;
  std::int32_t last = -1;
  auto add = [&](std::int32_t gid) {
    if (gid < 0 || gid == last) return;
    last = gid;
    if (std::find(seen_.begin(), seen_.end(), gid) != seen_.end()) return;
    seen_.push_back(gid);
    bound += static_cast<std::int64_t>(lv->group_size(gid));
  };
  add(lv->gid[e]);
  // Drop triangles broken since the last call while summing.
  auto& tris = it->second;
  std::size_t keep = 0;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto [a, b] = tris[i];
    if (!lv->in_truss.test(a) || !lv->in_truss.test(b)) continue;
    tris[keep++] = tris[i];
    add(lv->gid[a]);
    add(lv->gid[b]);
  }
  tris.resize(keep);
  return bound;
}

namespace {

void refresh_level(GroupIndex::Level& lv, const TrussUpdate& update, const Graph& g, const TrussnessMap& tau,
                   const std::unordered_map<EdgeId, int>& previous) {
  const int level = lv.level;
  auto old_tau = [&](EdgeId x) {
    auto it = previous.find(x);
    return it == previous.end() ? tau[x] : it->second;
  };

  std::vector<EdgeId> seeds;
  seeds.push_back(update.deleted);
  seeds.insert(seeds.end(), update.changed.begin(), update.changed.end());

  // An edge leaving the level drops out of its group and breaks every
  // level triangle through it, which may split the groups around it. An
  // edge arriving at the level only merges groups.
  std::map<std::int32_t, std::vector<EdgeId>> touched;
  std::vector<EdgeId> arriving;
  for (EdgeId x : seeds) {
    const int was = old_tau(x);
    if (was < level) continue;
    if (tau[x] >= level) {
      if (tau[x] == level && was != level) arriving.push_back(x);
      continue;
    }
    lv.in_truss.reset(x);
    if (lv.gid[x] >= 0) touched[lv.gid[x]];
    g.for_each_triangle(x, [&](VertexId, EdgeId a, EdgeId b) {
      if (old_tau(a) < level || old_tau(b) < level) return;
      for (EdgeId y : {a, b})
        if (lv.gid[y] >= 0) touched[lv.gid[y]].push_back(y);
    });
  }
  for (auto& [gid, ends] : touched) {
    auto& members = lv.members.at(gid);
    std::erase_if(members, [&](EdgeId x) {
      if (tau[x] == level) return false;
      lv.gid[x] = -1;
      return true;
    });
    if (members.empty()) {
      lv.members.erase(gid);
      continue;
    }
    std::erase_if(ends, [&](EdgeId x) { return lv.gid[x] != gid; });
    split_group(g, tau, lv, gid, std::move(ends));
  }

  std::sort(arriving.begin(), arriving.end());
  for (EdgeId x : arriving)
    if (lv.gid[x] == -1) grow_group(g, tau, lv, x, /*merge=*/true);
}

}  // namespace

void refresh_index(GroupIndex& idx, const TrussUpdate& update, const Graph& g, const TrussnessMap& tau,
                   bool track_new_levels) {
  if (update.deleted == kNoEdge) return;
  std::unordered_map<EdgeId, int> previous;
  previous.emplace(update.deleted, update.deleted_trussness);
  for (std::size_t i = 0; i < update.changed.size(); ++i) previous.emplace(update.changed[i], update.previous[i]);

  auto& levels = idx.level_map();
  for (auto& [l, lv] : levels) refresh_level(lv, update, g, tau, previous);

  if (!track_new_levels) return;
  std::set<int> fresh;
  for (std::size_t i = 0; i < update.changed.size(); ++i)
    for (int l : {update.previous[i], update.previous[i] - 1})
      if (l >= 3 && !levels.count(l)) fresh.insert(l);
  for (int l : fresh) levels.emplace(l, build_truss_group_level(g, tau, l));
}

namespace {

// Per-edge (group id, adjacency) with gids replaced by each group's
// smallest member.
struct CanonicalLevel {
  EdgeMask in_truss;
  std::vector<std::int64_t> group;
  std::vector<std::vector<std::int64_t>> adjacent;
  friend bool operator==(const CanonicalLevel&, const CanonicalLevel&) = default;
};

CanonicalLevel canonical(const GroupIndex& idx, const GroupIndex::Level& lv) {
  std::unordered_map<std::int32_t, std::int64_t> name;
  for (const auto& [gid, members] : lv.members)
    name[gid] = members.empty() ? -1 : static_cast<std::int64_t>(*std::min_element(members.begin(), members.end()));
  CanonicalLevel c;
  c.in_truss = lv.in_truss;
  c.group.assign(lv.gid.size(), -1);
  c.adjacent.assign(lv.gid.size(), {});
  for (std::size_t e = 0; e < lv.gid.size(); ++e) {
    if (lv.gid[e] >= 0) c.group[e] = name.at(lv.gid[e]);
    if (!lv.in_truss.test(e)) continue;
    for (std::int32_t gid : adjacent_groups(idx, static_cast<EdgeId>(e), lv.level))
      c.adjacent[e].push_back(name.at(gid));
    std::sort(c.adjacent[e].begin(), c.adjacent[e].end());
  }
  return c;
}

}  // namespace

bool equivalent(const GroupIndex& a, const GroupIndex& b) {
  if (a.primary_level() != b.primary_level() || a.levels() != b.levels()) return false;
  for (int l : a.levels())
    if (!(canonical(a, *a.level(l)) == canonical(b, *b.level(l)))) return false;
  return true;
}

}  // namespace ktm
