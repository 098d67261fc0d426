"""From a CNF formula to a pebbling question, and back.

The formula becomes a graph whose target is reachable, using every edge
at most once, exactly when the formula is satisfiable.  Subdividing each
edge into a long path of one-pebble vertices then turns "at most once"
into ordinary reachability.
"""

from pebbling.reductions import QuantifiedCnf, build_gnpr, build_gpr
from pebbling.solvers import nonrepetitive_reachable, reachable
from pebbling.verify import FIG1

unsat = QuantifiedCnf.sat([(-4, -3), (-2, 3), (-1, 4), (1, 4), (2, 3)], 4)

for name, f in [("four-clause example", FIG1), ("unsatisfiable", unsat)]:
    inst = build_gnpr(f)
    rep = nonrepetitive_reachable(inst.graph, inst.distribution, inst.target)
    print(f"{name}: satisfiable={f.satisfiable()}  graph n={inst.graph.n} m={inst.graph.edge_count}  "
          f"target reachable without repeats={rep.value}")
    if rep.value:
        used = sorted(rep.witness.items())
        print("  edges used:", ", ".join(f"{inst.labels[u]}->{inst.labels[v]}" for (u, v), _ in used))

small = QuantifiedCnf.sat([(1, 2), (-1, -2)])
g = build_gpr(small)
print(f"\nsubdivided instance for (w or x)(not w or not x): alpha={g.params['alpha']}, "
      f"n={g.graph.n}, bipartite={g.graph.is_bipartite()}")
print("plain reachability (demand engine):",
      reachable(g.graph, g.distribution, g.target, method="signature").value)
