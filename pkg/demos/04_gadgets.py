"""Null, fork and eye gadgets: thresholds measured by integer programming.

Each gadget has a critical distribution that should neither push a pebble
out through an overflow vertex nor over-supply its attachment.  The
overflow threshold is the least size at which every distribution spills;
the gap between it and the critical size is the constant C.
"""

from pebbling.reductions import GadgetSpec, build_gadget
from pebbling.verify import gadget_thresholds, gap_constant, verify_gadget

for kind in ("null", "fork", "eye"):
    spec = GadgetSpec(kind, beta=2, c=2)
    gad = build_gadget(spec)
    t = gadget_thresholds(spec)
    print(f"{kind:5} n={gad.graph.n:3}  critical={gad.critical_size:3}  "
          f"potency threshold={t['potency']:3}  overflow threshold={t['overflow']:3}")

print("\ngap constant C for c=2:", gap_constant(2), " for c=3:", gap_constant(3))
rep = verify_gadget(GadgetSpec("eye", 2, 2), samples=10)
print(rep.summary())
print("greedy claims checked:", rep.values.get("greedy_claims"))
