"""
From a topology to a path matrix, then a graph-aware bound on how many
nodes stay distinguishable.
"""

from bnt import oracle
from bnt.dis_bounds import builtin_strategies, lb_dis
from bnt.graphio import MonitorSpec, distances, enumerate_paths
from bnt.toy import toy_graph, toy_matrix

G = toy_graph()
D = distances(G)
print("hops 0 -> 5:", D(0, 5), D.canonical_path(0, 5))

res = enumerate_paths(G, MonitorSpec(sources=(0, 6, 3), targets=(4, 3, 5, 1)), cutoff=4)
print(res.matrix.m, "simple paths over", res.matrix.n, "nodes")

# Measuring every simple path leaves no node hidden behind others.  The four
# walks of the toy matrix are sparse enough for the bounds to matter.
P = toy_matrix()
for kind, d in [("neighbours", None), ("distance", 2), ("shortest_paths", None)]:
    ledger = lb_dis(P, 2, builtin_strategies(G, P, kind, d=d))
    print(f"{kind:15s} bound {ledger.bound}", [lv.removed for lv in ledger.levels])

print("exact |DIS_2|:", len(oracle.report(P, 2).dis_nodes))
