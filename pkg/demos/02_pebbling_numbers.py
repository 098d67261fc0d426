"""Four pebbling invariants on small graphs, with the standard bounds."""

import math

from pebbling.core import complete_graph, cycle_graph, path_graph, star_graph
from pebbling.numbers import gamma, pi, pi_hat, trivial_upper_bound

graphs = {
    "P4": path_graph(4),
    "C5": cycle_graph(5),
    "K4": complete_graph(4),
    "K1,3": star_graph(3),
}

print(f"{'graph':6} {'n':>2} {'pi_hat':>6} {'pi':>3} {'gamma':>5}  bounds")
for name, g in graphs.items():
    h, witness = pi_hat(g)
    p = pi(g, method="signature")
    c = gamma(g, [1] * g.n)
    print(f"{name:6} {g.n:>2} {h:>6} {p:>3} {c:>5}  "
          f"pi_hat <= {math.ceil(2 * g.n / 3)}, pi <= {trivial_upper_bound(g)};  optimal placement {witness}")

# the star has a cut vertex, so pi > n: three pebbles on one leaf cannot reach another leaf
print("\nstar: pebbles (0,3,0,0) reach leaf 2?", end=" ")
from pebbling.solvers import reachable

print(reachable(star_graph(3), (0, 3, 0, 0), 2).value)
