"""When can a multiset of moves be put in a legal order?

A signature records how often each directed edge is used.  Balances tell
you where pebbles end up, but a non-negative balance is not enough: a
directed cycle with one pebble per vertex balances perfectly and still
cannot start.
"""

from pebbling.core import Signature, balances, complete_graph, apply_sequence
from pebbling.orderability import extract_ordering, is_orderable, strip_cycles

cycle = Signature({(0, 1): 1, (1, 2): 1, (2, 0): 1})

for p in [(1, 1, 1), (2, 1, 1)]:
    ok, why = is_orderable(cycle, p)
    print(f"cycle under {p}: balances {balances(cycle, p)}, orderable={ok} ({why})")

seq = extract_ordering(cycle, (2, 1, 1))
print("a legal order:", seq)
print("replayed on K3:", apply_sequence(complete_graph(3), (2, 1, 1), seq))

# cycles never help reach anything; stripping them only raises balances
d = Signature({(0, 1): 1, (1, 2): 1, (2, 0): 1, (0, 3): 1})
p = (3, 1, 1, 0)
s = strip_cycles(d, p)
print(f"\nwith a tail arc: {dict(d.items())} -> {dict(s.items())}")
print("balances before", balances(d, p), "after", balances(s, p))
