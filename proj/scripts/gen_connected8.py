#!/usr/bin/env python3
"""Write every connected 8-vertex graph (one per isomorphism class) as graph6.

Extends each 7-vertex graph from the networkx atlas by one vertex joined to a
nonempty neighbour subset, keeps connected results and deduplicates by
Weisfeiler-Lehman hash buckets plus VF2 isomorphism checks. Expected output:
11117 records.
"""
import sys
import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def main(path):
    base = [g for g in graph_atlas_g() if g.number_of_nodes() == 7]
    buckets = {}
    for g in base:
        for mask in range(1, 1 << 7):
            h = g.copy()
            h.add_node(7)
            h.add_edges_from((7, v) for v in range(7) if mask >> v & 1)
            if not nx.is_connected(h):
                continue
            key = (tuple(sorted(d for _, d in h.degree())),
                   nx.weisfeiler_lehman_graph_hash(h, iterations=3))
            reps = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(h, r) for r in reps):
                reps.append(h)
    graphs = [g for reps in buckets.values() for g in reps]
    with open(path, "wb") as out:
        for g in graphs:
            out.write(nx.to_graph6_bytes(g, header=False))
    print(len(graphs))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "connected8.g6")
