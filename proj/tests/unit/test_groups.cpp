#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"
#include "ktm/cascade.hpp"
#include "ktm/error.hpp"
#include "ktm/groups.hpp"
#include "oracles.hpp"

using namespace ktm;
using helpers::eid;
using helpers::to_vector;

namespace {

oracle::Partition partition_of(const SupportGroupScan& scan) {
  oracle::Partition out;
  for (const auto& g : scan.groups) out.insert(g.members);
  return out;
}

oracle::Partition partition_of(const GroupIndex::Level& lv) {
  oracle::Partition out;
  for (const auto& [gid, members] : lv.members) {
    auto m = members;
    std::sort(m.begin(), m.end());
    out.insert(m);
  }
  return out;
}

Graph random_graph(int trial, std::mt19937_64& rng) {
  return trial % 2 ? gen::erdos_renyi(8 + trial % 17, 0.3 + 0.3 * (trial % 4) / 3.0, rng) : gen::planted(22, rng);
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("support groups of cliques") {
  const auto k5 = gen::clique(5);
  const auto scan = find_support_groups(k_truss(k5, 5));
  REQUIRE(scan.groups.size() == 1);
  CHECK(scan.groups[0].members.size() == 10);
  CHECK(scan.candidates == std::vector<EdgeId>{0});

  const auto k6 = gen::clique(6);
  const auto s6 = find_support_groups(k_truss(k6, 5));
  CHECK(s6.groups.empty());
  CHECK(s6.q.none());
  CHECK(s6.candidates.empty());

  const auto two = gen::disjoint_cliques({5, 5});
  const auto s2 = find_support_groups(k_truss(two, 5));
  CHECK(s2.groups.size() == 2);
  CHECK(s2.candidates == std::vector<EdgeId>{0, eid(two, 5, 6)});
}

TEST_CASE("truss group index examples") {
  const auto k5 = gen::clique(5);
  const auto idx = build_truss_group_index(k5, truss_decompose(k5), 5);
  const auto* lv = idx.level(5);
  REQUIRE(lv);
  REQUIRE(lv->members.size() == 1);
  CHECK(lv->members.begin()->second.size() == 10);
  for (EdgeId e = 0; e < 10; ++e) CHECK(upper_bound(idx, e) == 10);

  gen::Pairs p;
  gen::add_clique(p, {0, 1, 2, 3});
  gen::add_clique(p, {0, 1, 4, 5});
  const auto shared = gen::build(6, p);
  const auto si = build_truss_group_index(shared, truss_decompose(shared), 4);
  REQUIRE(si.level(4)->members.size() == 1);
  CHECK(si.level(4)->members.begin()->second.size() == 11);

  const auto k6 = gen::clique(6);
  const auto i6 = build_truss_group_index(k6, truss_decompose(k6), 5);
  CHECK(i6.level(5)->members.empty());
  for (EdgeId e = 0; e < k6.edge_count(); ++e) CHECK(upper_bound(i6, e) == 0);

  const auto two = gen::disjoint_cliques({5, 5});
  const auto i2 = build_truss_group_index(two, truss_decompose(two), 5);
  CHECK(upper_bound(i2, 0) == 10);

  CHECK_THROWS_AS(build_truss_group_index(k5, truss_decompose(k5), 2), ArgumentError);
  const auto tp = helpers::parse("0 1\n1 2\n0 2\n2 3\n");
  const auto itp = build_truss_group_index(tp, truss_decompose(tp), 3);
  CHECK_THROWS_AS(upper_bound(itp, eid(tp, 2, 3)), ContractViolation);
}

TEST_CASE("refresh after deletions in cliques") {
  const auto k5 = gen::clique(5);
  auto tau = truss_decompose(k5);
  auto idx = build_truss_group_index(k5, tau, 5);

  const TrussUpdate none{};
  auto same = idx;
  refresh_index(same, none, k5, tau);
  CHECK(equivalent(same, idx));

  const auto upd = apply_deletion(k5, tau, 0);
  refresh_index(idx, upd, k5, tau);
  CHECK(idx.level(5)->members.empty());
  REQUIRE(idx.level(4));
  REQUIRE(idx.level(4)->members.size() == 1);
  CHECK(idx.level(4)->members.begin()->second.size() == 9);

  const auto two = gen::disjoint_cliques({5, 5});
  auto t2 = truss_decompose(two);
  auto i2 = build_truss_group_index(two, t2, 5);
  const auto g2 = i2.level(5)->gid[eid(two, 5, 6)];
  const auto members = i2.level(5)->members.at(g2);
  const auto u2 = apply_deletion(two, t2, 0);
  refresh_index(i2, u2, two, t2);
  CHECK(i2.level(5)->gid[eid(two, 5, 6)] == g2);
  CHECK(i2.level(5)->members.at(g2) == members);
  CHECK(i2.level(5)->members.size() == 1);
}

TEST_CASE("property: support groups match union-find oracle and candidate rules") {
  std::mt19937_64 rng(30);
  int graphs = 0;
  for (int trial = 0; graphs < 150; ++trial) {
    const auto g = random_graph(trial, rng);
    const int k = 3 + trial % 3;
    const auto t = k_truss(g, k);
    if (t.empty()) continue;
    ++graphs;
    const auto truss = to_vector(t);
    const auto scan = find_support_groups(t);
    CHECK(partition_of(scan) == oracle::support_groups(g, k, truss));

    CascadeSimulator sim(t);
    std::vector<std::size_t> f(g.edge_count(), 0);
    std::vector<std::vector<EdgeId>> fol(g.edge_count());
    for (EdgeId e : t.edge_ids()) {
      f[e] = sim.run(e);
      fol[e].assign(sim.followers().begin(), sim.followers().end());
      std::sort(fol[e].begin(), fol[e].end());
    }
    for (const auto& grp : scan.groups) {
      for (EdgeId m : grp.members) {
        CHECK(t.support[m] == k - 2);
        CHECK(scan.group_of[m] == grp.gid);
        // Deleting any member takes the whole group down, so all members
        // share one follower count.
        CHECK(f[m] == f[grp.representative()]);
        for (EdgeId other : grp.members)
          if (other != m) CHECK(std::binary_search(fol[m].begin(), fol[m].end(), other));
        for (EdgeId x : grp.pruned_followers) CHECK(std::binary_search(fol[m].begin(), fol[m].end(), x));
      }
      CHECK(std::find(scan.candidates.begin(), scan.candidates.end(), grp.representative()) !=
            scan.candidates.end());
    }
    // Outside Q nothing cascades.
    for (EdgeId e : t.edge_ids())
      if (!scan.q.test(e)) CHECK(f[e] == 0);

    // Every candidate is a representative or an unpruned over-supported
    // Q edge; every such edge is a candidate.
    std::set<EdgeId> pruned;
    for (const auto& grp : scan.groups) pruned.insert(grp.pruned_followers.begin(), grp.pruned_followers.end());
    std::set<EdgeId> expect;
    for (const auto& grp : scan.groups) expect.insert(grp.representative());
    for (EdgeId e : t.edge_ids())
      if (scan.q.test(e) && t.support[e] > k - 2 && !pruned.count(e)) expect.insert(e);
    CHECK(std::set<EdgeId>(scan.candidates.begin(), scan.candidates.end()) == expect);
    CHECK(std::is_sorted(scan.candidates.begin(), scan.candidates.end()));

    // The best single deletion is always reachable from the candidates.
    std::size_t best_all = 0, best_cand = 0;
    for (EdgeId e : t.edge_ids()) best_all = std::max(best_all, f[e]);
    for (EdgeId e : scan.candidates) best_cand = std::max(best_cand, f[e]);
    CHECK(best_all == best_cand);
  }
}

TEST_CASE("property: truss groups and upper bounds match the oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = random_graph(trial, rng);
    const auto tau = truss_decompose(g);
    for (int k = 3; k <= std::max(3, tau.max()); ++k) {
      const auto idx = build_truss_group_index(g, tau, k);
      const auto ref = oracle::truss_groups(g, tau.tau, k);
      CHECK(partition_of(*idx.level(k)) == ref.groups);
      const auto t = k_truss(g, k);
      CascadeSimulator sim(t);
      for (EdgeId e : t.edge_ids()) {
        CHECK(upper_bound(idx, e) == ref.upper_bound[e]);
        CHECK(upper_bound(idx, e) >= static_cast<std::int64_t>(sim.run(e)));
      }
    }
  }
}

TEST_CASE("property: refresh equals a full rebuild after every deletion") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = random_graph(trial, rng);
    auto tau = truss_decompose(g);
    const int k = 3 + trial % 3;
    auto idx = build_truss_group_index(g, tau, k);
    auto primary_only = idx;
    std::vector<EdgeId> alive;
    for (EdgeId e = 0; e < g.edge_count(); ++e) alive.push_back(e);
    std::shuffle(alive.begin(), alive.end(), rng);
    for (std::size_t i = 0; i < std::min<std::size_t>(alive.size(), 5); ++i) {
      const auto upd = apply_deletion(g, tau, alive[i]);
      refresh_index(idx, upd, g, tau);
      refresh_index(primary_only, upd, g, tau, false);
      CHECK(equivalent(primary_only, build_truss_group_index(g, tau, k)));
      for (int level : idx.levels()) {
        const auto fresh = build_truss_group_level(g, tau, level);
        CHECK(partition_of(*idx.level(level)) == partition_of(fresh));
        CHECK(partition_of(fresh) == oracle::truss_groups(g, tau.tau, level).groups);
      }
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (tau[e] >= k) CHECK(upper_bound(idx, e) == oracle::truss_groups(g, tau.tau, k).upper_bound[e]);
    }
  }
}

}
