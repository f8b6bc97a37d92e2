#!/usr/bin/env python3
"""Generate the synthetic social-network fixture used by the trend checks.

Background: a power-law graph with triadic closure (Holme-Kim). On top of
it, overlapping communities of varying size and density, the way ego
networks look: many small tight circles, a few large loose ones.

    python3 tools/gen_social_fixture.py tests/data/social.txt
"""
import argparse
import random

import networkx as nx


def build(n, m, p, communities, seed, max_size=120, density=(0.5, 0.95), alpha=1.05):
    rng = random.Random(seed)
    g = nx.powerlaw_cluster_graph(n, m, p, seed=seed)
    nodes = list(g.nodes())
    for _ in range(communities):
        size = max(6, min(int(rng.paretovariate(alpha) * 8), max_size))
        dens = rng.uniform(*density)
        # Communities grow around a hub and its neighbourhood.
        hub = rng.choice(nodes)
        pool = list(g.neighbors(hub)) + rng.sample(nodes, size)
        members = list(dict.fromkeys([hub] + rng.sample(pool, min(len(pool), size - 1))))
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if rng.random() < dens:
                    g.add_edge(u, v)
    return g


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("output")
    ap.add_argument("--nodes", type=int, default=4039)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--p", type=float, default=0.6)
    ap.add_argument("--communities", type=int, default=100)
    ap.add_argument("--seed", type=int, default=5)
    args = ap.parse_args()
    g = build(args.nodes, args.m, args.p, args.communities, args.seed)
    with open(args.output, "w") as f:
        f.write(f"# synthetic social graph: n={g.number_of_nodes()} m={g.number_of_edges()} seed={args.seed}\n")
        for u, v in sorted(tuple(sorted(e)) for e in g.edges()):
            f.write(f"{u} {v}\n")


if __name__ == "__main__":
    main()
