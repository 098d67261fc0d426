"""Desk-scale verification suites.

Each suite returns a :class:`Report` whose ``counterexamples`` list must be
empty; ``undecided`` lists cases where a search budget ran out.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .core import Graph, Signature, complete_graph, cycle_graph, path_graph
from .numbers import distributions, pi_hat, reaches_all
from .orderability import is_orderable, is_orderable_acyclic
from .reductions import (
    GadgetSpec,
    QuantifiedCnf,
    build_annihilation_from_hampath,
    build_g2,
    build_gadget,
    build_gnpr,
    build_gpr,
    build_opn_instance,
    build_pc_instance,
    build_rpn_instance,
    build_star,
    eye_trees,
    p2_of,
    star_leaves,
    subdivide,
    universal_assignments,
)
from .solvers import (
    BudgetExceeded,
    SearchBudget,
    brute_nonrepetitive_reachable,
    coverable,
    greedy_tree_max,
    is_determinative,
    max_reachable,
    nonrepetitive_reachable,
    reachable,
)


@dataclass
class Report:
    suite: str
    cases: int = 0
    counterexamples: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    seed: int | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.undecided

    def to_json(self) -> str:
        return json.dumps(asdict(self) | {"ok": self.ok}, sort_keys=True, default=str)

    def summary(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return (f"{self.suite}: {status} ({self.cases} cases, {len(self.counterexamples)} counterexamples, "
                f"{len(self.undecided)} undecided, {self.seconds:.1f}s)")


def _timed(report: Report, start: float) -> Report:
    report.seconds = time.monotonic() - start
    return report


# -- orderability -----------------------------------------------------------------

ARCS4 = [(u, v) for u in range(4) for v in range(4) if u != v]


def arc_multisets(max_total: int = 6, arcs=ARCS4) -> list[tuple[int, ...]]:
    """All multiplicity vectors over ``arcs`` with total at most ``max_total``."""
    out: list[tuple[int, ...]] = []

    def rec(i, rem, cur):
        if i == len(arcs):
            out.append(tuple(cur))
            return
        for m in range(rem + 1):
            cur.append(m)
            rec(i + 1, rem - m, cur)
            cur.pop()

    rec(0, max_total, [])
    return out


def permutation_oracle_table(max_total: int = 6, max_pebbles: int = 3):
    """Orderability of every (arc multiset, distribution) pair by search over orderings.

    A multiset is orderable under p iff some arc (u,v) can go last: the rest
    is orderable and leaves u at least two pebbles.  Evaluated bottom-up over
    multisets, vectorized over the distributions.  Returns
    ``(multisets, distributions, table)`` with ``table[i, j]`` boolean.
    """
    ms = arc_multisets(max_total)
    ms.sort(key=sum)
    index = {m: i for i, m in enumerate(ms)}
    P = np.array(list(itertools.product(range(max_pebbles + 1), repeat=4)), dtype=np.int64)
    table = np.zeros((len(ms), len(P)), dtype=bool)
    for i, m in enumerate(ms):
        if sum(m) == 0:
            table[i] = True
            continue
        acc = np.zeros(len(P), dtype=bool)
        for a, (u, v) in enumerate(ARCS4):
            if not m[a]:
                continue
            prev = list(m)
            prev[a] -= 1
            j = index[tuple(prev)]
            # pebbles on u after the rest: p(u) + in(u) - 2 out(u)
            inn = sum(prev[b] for b, (x, y) in enumerate(ARCS4) if y == u)
            out = sum(prev[b] for b, (x, y) in enumerate(ARCS4) if x == u)
            acc |= table[j] & (P[:, u] + inn - 2 * out >= 2)
        table[i] = acc
    return ms, [tuple(p) for p in P.tolist()], table


def verify_orderability_suite(max_total: int = 6, max_pebbles: int = 3) -> Report:
    """is_orderable against ordering search, plus the acyclic specialization."""
    start = time.monotonic()
    rep = Report("orderability")
    ms, ps, table = permutation_oracle_table(max_total, max_pebbles)
    acyclic_cases = 0
    acyclic_bad = []
    for i, m in enumerate(ms):
        d = Signature({a: c for a, c in zip(ARCS4, m) if c})
        acyc = d.is_acyclic()
        row = table[i]
        for j, p in enumerate(ps):
            got = is_orderable(d, p)[0]
            rep.cases += 1
            if got != bool(row[j]):
                rep.counterexamples.append({"arcs": dict(d.items()), "p": p, "got": got})
            if acyc:
                acyclic_cases += 1
                if is_orderable_acyclic(d, p) != bool(row[j]):
                    acyclic_bad.append({"arcs": dict(d.items()), "p": p})
    rep.values = {"multisets": len(ms), "distributions": len(ps), "acyclic_cases": acyclic_cases,
                  "acyclic_discrepancies": len(acyclic_bad)}
    rep.counterexamples += acyclic_bad
    # directed cycles of length 2..4 with one pebble per vertex
    for n in (2, 3, 4):
        d = Signature({(i, (i + 1) % n): 1 for i in range(n)})
        if is_orderable(d, (1,) * n)[0]:
            rep.counterexamples.append({"cycle": n})
    return _timed(rep, start)


# -- gadget thresholds --------------------------------------------------------------

def _tree_orientation(g: Graph, verts: list[int], root: int) -> dict[int, int]:
    """Parent pointers of the tree induced on ``verts`` rooted at ``root``."""
    allowed = set(verts)
    parent = {root: -1}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y in allowed and y not in parent:
                parent[y] = x
                stack.append(y)
    if len(parent) != len(allowed):
        raise ValueError("vertex set is not connected")
    return parent


def greedy_value(g: Graph, verts: list[int], root: int, q, frozen=()) -> int:
    """Greedy pebbles delivered to ``root`` inside the tree on ``verts``.

    Vertices in ``frozen`` never move their pebbles (and receive nothing
    useful); the root's own pebbles are included.
    """
    parent = _tree_orientation(g, verts, root)
    depth = {root: 0}
    for v in _bfs_order(parent, root):
        if v != root:
            depth[v] = depth[parent[v]] + 1
    load = {v: q[v] for v in verts}
    for v in sorted(verts, key=lambda x: -depth[x]):
        if v == root or v in frozen:
            continue
        load[parent[v]] += load[v] // 2
    return load[root]


def _bfs_order(parent, root):
    children: dict[int, list[int]] = {}
    for v, p in parent.items():
        if p >= 0:
            children.setdefault(p, []).append(v)
    out = [root]
    i = 0
    while i < len(out):
        out.extend(children.get(out[i], []))
        i += 1
    return out


class _FlowModel:
    """MILP over a gadget's pebble counts with exact greedy-flow side variables."""

    def __init__(self, g: Graph, bound: int):
        self.g = g
        self.nq = g.n
        self.bound = bound
        self.ncols = g.n
        self.rows: list[tuple[dict[int, float], float, float]] = []

    def var(self) -> int:
        self.ncols += 1
        return self.ncols - 1

    def delivered(self, verts: list[int], root: int, frozen=()) -> dict[int, float]:
        """Linear expression (col -> coeff) for the greedy inflow into ``root`` (root's pebbles excluded)."""
        parent = _tree_orientation(self.g, verts, root)
        flow = {v: self.var() for v in verts if v != root}
        children: dict[int, list[int]] = {}
        for v, p in parent.items():
            if p >= 0:
                children.setdefault(p, []).append(v)
        for v in verts:
            if v == root:
                continue
            f = flow[v]
            if v in frozen:
                self.rows.append(({f: 1.0}, 0.0, 0.0))
                continue
            # 2 f <= q(v) + inflow <= 2 f + 1
            expr = {v: 1.0, f: -2.0}
            for ch in children.get(v, []):
                expr[flow[ch]] = expr.get(flow[ch], 0.0) + 1.0
            self.rows.append((expr, 0.0, 1.0))
        out: dict[int, float] = {}
        for ch in children.get(root, []):
            out[flow[ch]] = out.get(flow[ch], 0.0) + 1.0
        return out

    def constrain(self, expr: dict[int, float], lo: float, hi: float) -> None:
        self.rows.append((dict(expr), lo, hi))

    def maximize_total(self) -> tuple[int, list[int]]:
        from scipy.optimize import Bounds, LinearConstraint, milp
        from scipy.sparse import lil_matrix

        A = lil_matrix((len(self.rows), self.ncols))
        lo = np.empty(len(self.rows))
        hi = np.empty(len(self.rows))
        for i, (expr, a, b) in enumerate(self.rows):
            for col, coef in expr.items():
                A[i, col] = coef
            lo[i], hi[i] = a, b
        c = np.zeros(self.ncols)
        c[: self.nq] = -1.0
        ub = np.full(self.ncols, float(self.bound))
        res = milp(c, constraints=LinearConstraint(A.tocsr(), lo, hi), integrality=np.ones(self.ncols),
                   bounds=Bounds(np.zeros(self.ncols), ub), options={"mip_rel_gap": 0})
        if not res.success:
            raise RuntimeError(f"threshold MILP failed: {res.message}")
        q = [int(round(x)) for x in res.x[: self.nq]]
        return sum(q), q


def _with(expr: dict[int, float], col: int, coef: float = 1.0) -> dict[int, float]:
    out = dict(expr)
    out[col] = out.get(col, 0.0) + coef
    return out


def _non_overflow(model: _FlowModel, gad) -> None:
    g = gad.graph
    if gad.spec.kind == "eye":
        trees = eye_trees(gad)
        over = set(gad.overflow)
        for w in gad.overflow:
            expr = {w: 1.0}
            for verts in trees.values():
                if w in verts:
                    frozen = over - {w}
                    for col, coef in model.delivered(verts, w, frozen).items():
                        expr = _with(expr, col, coef)
            model.constrain(expr, 0.0, 1.0)
    else:
        w = gad.overflow[0]
        model.constrain(_with(model.delivered(list(range(g.n)), w), w), 0.0, 1.0)


def _eye_attachment_expr(model: _FlowModel, gad, name: str) -> dict[int, float]:
    trees = eye_trees(gad)
    over = set(gad.overflow)
    v = gad.attachments[name]
    side = {"v1": 1, "v2": 2, "v3": 3}[name]
    verts = [x for x in trees[side] if x not in over]
    return _with(model.delivered(verts, v), v)


def gadget_thresholds(spec: GadgetSpec) -> dict:
    """Exact overflow and potency thresholds of a gadget.

    A threshold is one more than the largest distribution without the
    property; those maxima come from an integer program whose side
    variables replay the greedy strategy on the gadget's trees exactly.
    """
    gad = build_gadget(spec)
    g = gad.graph
    big = 1 << (spec.beta + spec.c)
    bound = 16 * big
    model = _FlowModel(g, bound)
    _non_overflow(model, gad)
    max_no_overflow, q_over = model.maximize_total()
    if spec.kind == "null":
        potency = 0
        q_pot = None
    elif spec.kind == "fork":
        model = _FlowModel(g, bound)
        _non_overflow(model, gad)
        v = gad.attachments["v"]
        model.constrain(_with(model.delivered(list(range(g.n)), v), v), 0.0, 0.0)
        m, q_pot = model.maximize_total()
        potency = m + 1
    elif spec.kind == "eye":
        best = -1
        q_pot = None
        for blocked in ("v1", "v3"):
            model = _FlowModel(g, bound)
            _non_overflow(model, gad)
            model.constrain(_eye_attachment_expr(model, gad, "v2"), 0.0, 1.0)
            model.constrain(_eye_attachment_expr(model, gad, blocked), 0.0, 0.0)
            m, q = model.maximize_total()
            if m > best:
                best, q_pot = m, q
        potency = best + 1
    else:
        raise ValueError("thresholds are defined for null, fork and eye gadgets")
    return {"kind": spec.kind, "beta": spec.beta, "c": spec.c, "overflow": max_no_overflow + 1,
            "potency": potency, "critical": gad.critical_size, "witness_no_overflow": q_over,
            "witness_not_potent": q_pot}


@lru_cache(maxsize=None)
def gap_constant(c: int, beta: int | None = None) -> int:
    """Smallest C making every gap inequality hold at (beta, c).

    Below beta = c the short pendant paths distort the thresholds, so the
    default evaluates at beta = max(2, c), where the slack has stabilized.
    """
    if beta is None:
        beta = max(2, c)
    big = 1 << (beta + c)
    C = 0
    for kind in ("null", "fork", "eye"):
        t = gadget_thresholds(GadgetSpec(kind, beta, c))
        C = max(C, t["overflow"] - t["critical"])
        if kind != "null":
            C = max(C, big - (t["critical"] - t["potency"]))
    return C


# -- gadget certification ---------------------------------------------------------------

def _eye_parts(gad):
    trees = eye_trees(gad)
    over = set(gad.overflow)
    return trees, over


def gadget_overflows(gad, q) -> bool:
    """Can some overflow vertex collect two pebbles (greedy decomposition)?"""
    g = gad.graph
    if gad.spec.kind != "eye":
        return greedy_value(g, list(range(g.n)), gad.overflow[0], q) >= 2
    trees, over = _eye_parts(gad)
    for w in gad.overflow:
        total = q[w]
        for verts in trees.values():
            if w in verts:
                total += greedy_value(g, verts, w, q, over - {w}) - q[w]
        if total >= 2:
            return True
    return False


def attachment_supply(gad, q) -> dict[str, int]:
    """Greedy pebbles each attachment can collect without touching overflow vertices."""
    g = gad.graph
    if gad.spec.kind != "eye":
        v = gad.attachments["v"]
        return {"v": greedy_value(g, list(range(g.n)), v, q)}
    trees, over = _eye_parts(gad)
    side = {"v1": 1, "v2": 2, "v3": 3}
    return {name: greedy_value(g, [x for x in trees[side[name]] if x not in over], v, q)
            for name, v in gad.attachments.items()}


def gadget_potent(gad, q) -> bool:
    """Some quota can be met (or the gadget overflows)."""
    if gadget_overflows(gad, q):
        return True
    supply = attachment_supply(gad, q)
    return any(all(supply[a] >= need for a, need in quota.items()) for quota in gad.quotas)


def _exact_overflow(gad, q, budget) -> bool | None:
    for w in gad.overflow:
        rep = reachable(gad.graph, q, w, 2, budget, method="signature")
        if not rep.decided:
            return None
        if rep.answer:
            return True
    return False


def _exact_potent(gad, q, budget) -> bool | None:
    over = _exact_overflow(gad, q, budget)
    if over is None or over:
        return over
    for quota in gad.quotas:
        need = [0] * gad.graph.n
        for a, s in quota.items():
            need[gad.attachments[a]] = s
        if not any(need):
            return True
        rep = coverable(gad.graph, q, need, budget, method="signature")
        if not rep.decided:
            return None
        if rep.answer:
            return True
    return False


def verify_gadget(spec: GadgetSpec, C: int | None = None, samples: int = 0, seed: int = 0,
                  budget: SearchBudget | None = None) -> Report:
    """Thresholds, critical distributions and gap inequalities for one gadget."""
    start = time.monotonic()
    budget = budget or SearchBudget(2_000_000, 60.0)
    rep = Report(f"gadget-{spec.kind}", seed=seed)
    gad = build_gadget(spec)
    t = gadget_thresholds(spec)
    C = gap_constant(spec.c) if C is None else C
    big = 1 << (spec.beta + spec.c)
    crit = gad.critical_size
    rep.values = {"overflow_threshold": t["overflow"], "potency_threshold": t["potency"],
                  "critical_size": crit, "C": C, "beta": spec.beta, "c": spec.c}

    def check(ok: bool, what: str, **info):
        rep.cases += 1
        if not ok:
            rep.counterexamples.append({"check": what, **info})

    # the integer-program witnesses, confirmed by the exact solver
    q_over = t["witness_no_overflow"]
    exact = _exact_overflow(gad, q_over, budget)
    if exact is None:
        rep.undecided.append({"check": "no-overflow witness"})
    else:
        check(not exact and sum(q_over) == t["overflow"] - 1, "no-overflow witness", q=q_over)
    for x in range(gad.graph.n):
        bumped = list(q_over)
        bumped[x] += 1
        check(gadget_overflows(gad, bumped), "no-overflow witness is maximal", vertex=x)
    if t["witness_not_potent"] is not None:
        q_pot = t["witness_not_potent"]
        exact = _exact_potent(gad, q_pot, budget)
        if exact is None:
            rep.undecided.append({"check": "non-potent witness"})
        else:
            check(not exact and sum(q_pot) == t["potency"] - 1, "non-potent witness", q=q_pot)

    # critical distributions: no overflow, quota met but not exceeded
    critical_ok = True
    for i, q in enumerate(gad.criticals):
        over = _exact_overflow(gad, q, budget)
        if over is None:
            rep.undecided.append({"check": "critical overflow", "index": i})
        else:
            critical_ok &= not over
            check(not over, "critical distribution overflows", index=i)
        check(not gadget_overflows(gad, q), "critical distribution overflows (greedy)", index=i)
        supply = attachment_supply(gad, q)
        quota = gad.quotas[i]
        met = all(supply[a] == s for a, s in quota.items())
        critical_ok &= met
        check(met, "critical supply differs from quota", index=i, supply=supply, quota=quota)
    rep.values["critical_ok"] = critical_ok

    # greedy claims on the eye's trees: at most one pebble on each overflow vertex
    if spec.kind == "eye":
        trees, over = _eye_parts(gad)
        claims = 0
        for i, q in enumerate(gad.criticals):
            for l, verts in trees.items():
                for w in over & set(verts):
                    got = greedy_value(gad.graph, verts, w, q, over - {w})
                    claims += 1
                    check(got <= 1, "greedy places two pebbles on an overflow vertex", tree=l, w=w, index=i)
        rep.values["greedy_claims"] = claims
    if spec.kind == "fork":
        u = gad.vertex("u")
        g = gad.graph
        check(gad.criticals[0][u] == 2 * big - 1, "fork critical load")
        check(greedy_tree_max(g, gad.criticals[0], gad.overflow[0]) == 1, "fork greedy toward w")
        check(greedy_tree_max(g, gad.criticals[0], gad.attachments["v"]) == 1, "fork greedy toward v")

    # gap inequalities
    check(t["overflow"] - crit <= C, "overflow exceeds critical size by more than C")
    check(crit <= t["overflow"], "critical size above overflow threshold")
    if spec.kind != "null":
        check(t["potency"] <= crit, "potency threshold above critical size")
        check(crit - t["potency"] >= big - C, "potency gap smaller than 2^(beta+c) - C")

    # random cross-check of the greedy predicates against the exact solver
    rng = random.Random(seed)
    outcomes = {"overflow": 0, "potent": 0}
    for _ in range(samples):
        # a few loaded vertices, so both outcomes occur
        support = rng.sample(range(gad.graph.n), rng.randint(1, 3))
        q = [0] * gad.graph.n
        for _ in range(rng.randint(0, t["overflow"] + 2)):
            q[rng.choice(support)] += 1
        eo = _exact_overflow(gad, q, budget)
        ep = _exact_potent(gad, q, budget) if spec.kind != "null" else True
        if eo is None or ep is None:
            rep.undecided.append({"check": "predicate sample", "q": q})
            continue
        outcomes["overflow"] += eo
        outcomes["potent"] += ep
        check(eo == gadget_overflows(gad, q), "overflow predicate disagrees with search", q=q)
        if spec.kind != "null":
            check(ep == gadget_potent(gad, q), "potency predicate disagrees with search", q=q)
    if samples:
        rep.values["samples"] = dict(outcomes, total=samples)
    return _timed(rep, start)


def verify_gadget_suite(c: int = 2, betas=(2, 3, 4), samples: int = 30, seed: int = 0) -> Report:
    """All three gadgets at each beta, with C computed once for this c."""
    start = time.monotonic()
    rep = Report("gadgets", seed=seed)
    C = gap_constant(c)
    rep.values["C"] = C
    for beta in betas:
        for kind in ("null", "fork", "eye"):
            sub = verify_gadget(GadgetSpec(kind, beta, c), C, samples, seed)
            rep.cases += sub.cases
            rep.counterexamples += [dict(x, beta=beta, kind=kind) for x in sub.counterexamples]
            rep.undecided += [dict(x, beta=beta, kind=kind) for x in sub.undecided]
            rep.values[f"{kind}@{beta}"] = sub.values
    return _timed(rep, start)


# -- star lemma --------------------------------------------------------------------------

def verify_star_lemma(alpha: int = 4, beta: int = 2, budget: SearchBudget | None = None) -> Report:
    """Every distribution of beta*2^alpha pebbles that can put 2^alpha on each leaf.

    Branch and bound over vertices (farthest from the center first), pruned
    by the per-leaf weight inequality and by its sum over leaves; survivors
    are confirmed with the exact solver.
    """
    start = time.monotonic()
    rep = Report("star-lemma")
    g, _ = build_star(alpha, beta)
    leaves = star_leaves(alpha, beta)
    total = beta << alpha
    need = 1 << alpha
    D = 2 * alpha
    # integer weights scaled by 2^D
    w = [[1 << (D - g.distances_from(l)[v]) for v in range(g.n)] for l in leaves]
    goal = need << D
    order = sorted(range(g.n), key=lambda v: -g.distances_from(0)[v])
    # best per-pebble contribution from the remaining vertices
    best_leaf = [[max((w[i][v] for v in order[j:]), default=0) for j in range(g.n + 1)]
                 for i in range(len(leaves))]
    best_sum = [max((sum(w[i][v] for i in range(len(leaves))) for v in order[j:]), default=0)
                for j in range(g.n + 1)]
    survivors = []
    nodes = 0

    def rec(j, left, acc, assign):
        nonlocal nodes
        nodes += 1
        if any(acc[i] + left * best_leaf[i][j] < goal for i in range(len(leaves))):
            return
        if sum(acc) + left * best_sum[j] < goal * len(leaves):
            return
        if j == g.n - 1:
            v = order[j]
            assign[v] = left
            final = [acc[i] + left * w[i][v] for i in range(len(leaves))]
            if all(x >= goal for x in final):
                survivors.append(tuple(assign))
            assign[v] = 0
            return
        v = order[j]
        for c in range(left, -1, -1):
            assign[v] = c
            rec(j + 1, left - c, [acc[i] + c * w[i][v] for i in range(len(leaves))], assign)
        assign[v] = 0

    rec(0, total, [0] * len(leaves), [0] * g.n)
    confirmed = []
    for p in survivors:
        ok = True
        for l in leaves:
            r = reachable(g, p, l, need, budget, method="signature")
            if not r.decided:
                rep.undecided.append({"p": p, "leaf": l})
                ok = False
                break
            ok &= r.answer
        if ok:
            confirmed.append(p)
    canonical = tuple(need if v in leaves else 0 for v in range(g.n))
    rep.cases = len(survivors) + 2
    if confirmed != [canonical]:
        rep.counterexamples.append({"confirmed": confirmed})
    # perturbation: slide one pebble off a leaf toward the center
    moved = list(canonical)
    moved[leaves[0]] -= 1
    moved[leaves[0] - 1] += 1
    if all(sum(moved[v] * w[i][v] for v in range(g.n)) >= goal for i in range(len(leaves))):
        rep.counterexamples.append({"perturbation passes weight test": moved})
    from math import comb

    rep.values = {"alpha": alpha, "beta": beta, "pebbles": total, "distributions": comb(total + g.n - 1, g.n - 1),
                  "search_nodes": nodes, "weight_survivors": len(survivors),
                  "confirmed": [list(p) for p in confirmed]}
    return _timed(rep, start)


# -- enumerators and oracles ----------------------------------------------------------------

def small_graphs(n: int, connected: bool = True) -> list[Graph]:
    """Graphs on n vertices up to isomorphism (brute-force canonical form)."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
        key = min(tuple(sorted(tuple(sorted((pi[a], pi[b]))) for a, b in edges)) for pi in perms)
        if key in seen:
            continue
        seen.add(key)
        g = Graph(n, key)
        if connected and not g.is_connected():
            continue
        out.append(g)
    return out


def has_hamiltonian_path(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return any(all(g.has_edge(a, b) for a, b in zip(order, order[1:]))
               for order in itertools.permutations(range(g.n)))


def canonical_formulas(max_vars: int = 4, max_clauses: int = 4) -> list[QuantifiedCnf]:
    """Canonical formulas up to variable renaming, clause order ignored."""
    clauses = []
    for size in (2, 3):
        for vs in itertools.combinations(range(1, max_vars + 1), size):
            for signs in itertools.product((1, -1), repeat=size):
                clauses.append(tuple(s * v for s, v in zip(signs, vs)))
    perms = list(itertools.permutations(range(1, max_vars + 1)))
    seen = set()
    out = []
    for m in range(2, max_clauses + 1):
        for combo in itertools.combinations_with_replacement(clauses, m):
            pos = [0] * (max_vars + 1)
            neg = [0] * (max_vars + 1)
            for c in combo:
                for l in c:
                    if l > 0:
                        pos[l] += 1
                    else:
                        neg[-l] += 1
            if any((pos[v] or neg[v]) and (neg[v] != 1 or pos[v] not in (1, 2)) for v in range(1, max_vars + 1)):
                continue
            key = min(tuple(sorted(tuple(sorted((l // abs(l)) * pi[abs(l) - 1] for l in c)) for c in combo))
                      for pi in perms)
            if key in seen:
                continue
            seen.add(key)
            used = sorted({abs(l) for c in key for l in c})
            ren = {v: i + 1 for i, v in enumerate(used)}
            f = QuantifiedCnf.sat([tuple((l // abs(l)) * ren[abs(l)] for l in c) for c in key], len(used))
            if f.is_canonical():
                out.append(f)
    return out


FIG1 = QuantifiedCnf.sat([(1, 2), (1, -2), (-1, 3, 4), (2, -3, -4)], 4)


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def random_distribution(n: int, size: int, rng: random.Random) -> tuple[int, ...]:
    p = [0] * n
    for _ in range(size):
        p[rng.randrange(n)] += 1
    return tuple(p)


# -- reduction round trips -----------------------------------------------------------------

def _decided(rep: Report, res, case) -> bool | None:
    if not res.decided:
        rep.undecided.append(case)
        return None
    return res.answer


def verify_npr(max_vars: int = 4, max_clauses: int = 5, budget: SearchBudget | None = None) -> Report:
    """Truth-table satisfiability against nonrepetitive reachability on G^NPR."""
    start = time.monotonic()
    rep = Report("npr")
    formulas = canonical_formulas(max_vars, max_clauses) + [FIG1]
    unsat = 0
    for f in formulas:
        inst = build_gnpr(f)
        sat = f.satisfiable()
        unsat += not sat
        got = _decided(rep, nonrepetitive_reachable(inst.graph, inst.distribution, inst.target, budget),
                       {"clauses": f.clauses})
        rep.cases += 1
        if got is not None and got != sat:
            rep.counterexamples.append({"clauses": f.clauses, "sat": sat})
    rep.values = {"formulas": len(formulas), "unsatisfiable": unsat}
    return _timed(rep, start)


def verify_subdivision(t: int = 6, max_edges: int = 4, count: int = 6, seed: int = 0,
                       budget: SearchBudget | None = None) -> Report:
    """Nonrepetitive reachability in G against plain reachability in S(G, alpha).

    alpha is the least value with 2^alpha >= 2t and 2^alpha >= e^4; every
    distribution of size at most t and every target is tried.
    """
    from .reductions import _least_alpha

    start = time.monotonic()
    rep = Report("subdivision", seed=seed)
    pool = [g for n in range(2, 6) for g in small_graphs(n) if g.edge_count <= max_edges]
    rng = random.Random(seed)
    graphs = rng.sample(pool, min(count, len(pool)))
    positives = 0
    for g in graphs:
        alpha = _least_alpha(t, g.edge_count, odd=False)
        for size in range(t + 1):
            for p in distributions(g.n, size):
                s = subdivide(g, p, alpha)
                for r in range(g.n):
                    case = {"edges": g.sorted_edges, "p": p, "r": r, "alpha": alpha}
                    a = _decided(rep, nonrepetitive_reachable(g, p, r, budget), case)
                    b = _decided(rep, reachable(s.graph, s.distribution, r, 1, budget, method="signature"), case)
                    if a is None or b is None:
                        continue
                    rep.cases += 1
                    positives += a
                    if a != b:
                        rep.counterexamples.append(dict(case, nonrepetitive=a, subdivided=b))
    rep.values = {"graphs": [g.sorted_edges for g in graphs], "reachable_cases": positives}
    return _timed(rep, start)


def verify_pc(max_n: int = 4, max_pebbles: int = 6, budget: SearchBudget | None = None) -> Report:
    """Reachability of r under p against covering the all-ones distribution from the shifted q."""
    start = time.monotonic()
    rep = Report("pc")
    for n in range(1, max_n + 1):
        for g in small_graphs(n, connected=False):
            for size in range(max_pebbles + 1):
                for p in distributions(n, size):
                    for r in range(n):
                        inst = build_pc_instance(g, p, r)
                        case = {"edges": g.sorted_edges, "p": p, "r": r}
                        a = _decided(rep, reachable(g, p, r, 1, budget), case)
                        b = _decided(rep, coverable(g, inst.distribution, inst.meta["cover"], budget), case)
                        if a is None or b is None:
                            continue
                        rep.cases += 1
                        if a != b:
                            rep.counterexamples.append(dict(case, reachable=a, covers=b))
    return _timed(rep, start)


def verify_hampath(max_n: int = 5, budget: SearchBudget | None = None) -> Report:
    """Hamiltonian paths against annihilation on the apex instance."""
    from .solvers import annihilation

    start = time.monotonic()
    rep = Report("hampath")
    yes = 0
    for n in range(1, max_n + 1):
        for g in small_graphs(n):
            inst = build_annihilation_from_hampath(g)
            ham = has_hamiltonian_path(g)
            got = _decided(rep, annihilation(inst.graph, inst.distribution, budget), {"edges": g.sorted_edges})
            if got is None:
                continue
            rep.cases += 1
            yes += ham
            if got != ham:
                rep.counterexamples.append({"edges": g.sorted_edges, "n": n, "hamiltonian": ham})
    rep.values = {"hamiltonian": yes}
    return _timed(rep, start)


def verify_dpr(formulas=None, budget: SearchBudget | None = None) -> Report:
    """The target of G^PR is determinative."""
    start = time.monotonic()
    rep = Report("dpr")
    formulas = formulas or [QuantifiedCnf.sat([(1, 2), (-1, -2)], 2),
                            QuantifiedCnf.sat([(-4, -3), (-2, 3), (-1, 4), (1, 4), (2, 3)], 4)]
    for f in formulas:
        inst = build_gpr(f)
        rep.cases += 1
        try:
            ok = is_determinative(inst.graph, inst.distribution, inst.target, budget, method="signature")
        except BudgetExceeded:
            rep.undecided.append({"clauses": f.clauses})
            continue
        if not ok:
            rep.counterexamples.append({"clauses": f.clauses})
    return _timed(rep, start)


def weight_feasible(h: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Is there a size-k distribution meeting the weight inequality at every vertex?

    Infeasibility certifies that no size-k distribution reaches every vertex.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = h.n
    D = h.diameter()
    A = np.array([[float(1 << (D - h.distances_from(v)[u])) for u in range(n)] for v in range(n)])
    cons = [LinearConstraint(A, float(1 << D), np.inf), LinearConstraint(np.ones((1, n)), k, k)]
    res = milp(np.zeros(n), constraints=cons, integrality=np.ones(n), bounds=Bounds(0, k))
    if res.status == 2:
        return False, None
    if not res.success:
        raise RuntimeError(f"weight program failed: {res.message}")
    return True, tuple(int(round(x)) for x in res.x)


def balance_feasible(h: Graph, k: int, targets) -> tuple[bool, tuple[int, ...] | None]:
    """Is there a size-k distribution q and, per target t, an arc multiset with
    every balance nonnegative and balance(t) >= 1?

    Removing a directed cycle raises balances, so such a multiset can be
    taken acyclic, and acyclic multisets with nonnegative balances are
    orderable.  The program is therefore exact for the listed targets, and
    infeasibility refutes reaching all of them.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    n = h.n
    arcs = list(h.sorted_edges) + [(v, u) for u, v in h.sorted_edges]
    targets = list(targets)
    ncols = n + len(targets) * len(arcs)
    nrows = len(targets) * n + 1
    M = lil_matrix((nrows, ncols))
    lo = np.zeros(nrows)
    hi = np.full(nrows, np.inf)
    for ti, t in enumerate(targets):
        base = n + ti * len(arcs)
        for u in range(n):
            M[ti * n + u, u] = 1
            lo[ti * n + u] = 1 if u == t else 0
        for ai, (a, b) in enumerate(arcs):
            M[ti * n + b, base + ai] += 1
            M[ti * n + a, base + ai] -= 2
    M[nrows - 1, :n] = 1
    lo[-1] = hi[-1] = k
    res = milp(np.zeros(ncols), constraints=LinearConstraint(M.tocsr(), lo, hi),
               integrality=np.ones(ncols), bounds=Bounds(0, k))
    if res.status == 2:
        return False, None
    if not res.success:
        raise RuntimeError(f"balance program failed: {res.message}")
    return True, tuple(int(round(x)) for x in res.x[:n])


def opn_at_most(h: Graph, k: int, hints=(), brute: bool = False, core=(),
                budget: SearchBudget | None = None) -> bool | None:
    """Decide whether some size-k distribution reaches every vertex of h.

    ``brute`` enumerates every size-k distribution.  Otherwise refutation
    tries the weight program, then the balance program over ``core`` plus
    every leaf of h; confirmation tries the hinted and program-found
    candidates.  ``None`` means neither side succeeded.
    """
    if brute:
        return any(reaches_all(h, p, budget, "signature") for p in distributions(h.n, k))
    feasible, cand = weight_feasible(h, k)
    if not feasible:
        return False
    candidates = list(hints) + [cand]
    for q in candidates:
        if reaches_all(h, q, budget, "signature"):
            return True
    targets = sorted(set(core) | {v for v in range(h.n) if h.degree(v) == 1})
    feasible, cand = balance_feasible(h, k, targets)
    if not feasible:
        return False
    if reaches_all(h, cand, budget, "signature"):
        return True
    return None


def verify_opn(max_n: int = 3, max_m: int = 2, budget: SearchBudget | None = None) -> Report:
    """DPR reachability against optimal pebbling of the star-augmented graph.

    Default construction parameters throughout.  Instances with one pebble are decided by
    enumeration on both sides (and cross-checked against the programs);
    with two pebbles the optimal-pebbling side is refuted by the weight or
    balance program and confirmed by an explicit distribution.
    """
    start = time.monotonic()
    rep = Report("opn")
    counts = {"brute": 0, "certificate": 0}
    for n in range(1, max_n + 1):
        for g in small_graphs(n):
            for m in range(1, max_m + 1):
                for p in distributions(n, m):
                    for r in range(n):
                        case = {"edges": g.sorted_edges, "p": p, "r": r}
                        if not is_determinative(g, p, r, budget):
                            continue
                        inst = build_opn_instance(g, p, r)
                        h, k = inst.graph, inst.budget_k
                        reach = reachable(g, p, r, 1, budget).value
                        centered = [0] * h.n
                        for c in inst.meta["centers"]:
                            centered[c] = 1 << inst.params["alpha"]
                        try:
                            if m == 1:
                                got = opn_at_most(h, k, brute=True, budget=budget)
                                alt = opn_at_most(h, k, hints=[centered], core=range(n), budget=budget)
                                if alt is not None and alt != got:
                                    rep.counterexamples.append(dict(case, brute=got, certificate=alt))
                                counts["brute"] += 1
                            else:
                                got = opn_at_most(h, k, hints=[centered], core=range(n), budget=budget)
                                counts["certificate"] += 1
                        except BudgetExceeded:
                            got = None
                        if got is None:
                            rep.undecided.append(case)
                            continue
                        rep.cases += 1
                        if got != reach:
                            rep.counterexamples.append(dict(case, reachable=reach, opn=got, n_h=h.n, k=k))
    rep.values = counts
    return _timed(rep, start)


# -- the pebbling-number instance --------------------------------------------------------------

ONE_UNIVERSAL = QuantifiedCnf(3, frozenset({0}), frozenset({1, 2}), ((1, 2), (-1, 3), (-2, -3, 1)))


def verify_rpn_structure(f: QuantifiedCnf = ONE_UNIVERSAL, beta: int | None = None, c: int = 3,
                         alpha: int | None = None, budget: SearchBudget | None = None) -> Report:
    """Pebble cap on G2, gadgets per vertex, diameter and size of H."""
    import math

    start = time.monotonic()
    rep = Report("rpn-structure")
    g2 = build_g2(f, alpha)
    g = g2.graph
    caps = {}
    for a in universal_assignments(f):
        caps[str(a)] = 0
        p = p2_of(g2, a)
        for v in range(g.n):
            res = reachable(g, p, v, 6, budget, method="signature")
            rep.cases += 1
            case = {"assignment": a, "vertex": v}
            if not res.decided:
                rep.undecided.append(case)
                continue
            if res.answer:
                rep.counterexamples.append(dict(case, check="six pebbles reach a vertex of G2"))
                continue
            try:
                caps[str(a)] = max(caps[str(a)], max_reachable(g, p, v, budget, method="signature"))
            except BudgetExceeded:
                rep.undecided.append(dict(case, check="exact maximum"))
    inst = build_rpn_instance(f, beta, c, alpha)
    h = inst.graph
    per_vertex = inst.meta["gadgets_per_vertex"]
    hist: dict[int, int] = {}
    for z, cnt in enumerate(per_vertex):
        if z != inst.target:
            hist[cnt] = hist.get(cnt, 0) + 1
    rep.cases += 1
    if max(per_vertex) > 2 or hist.get(0, 0):
        rep.counterexamples.append({"check": "gadgets per vertex", "histogram": hist})
    diameter = h.diameter()
    b = inst.params["beta"]
    K = 2 * c + 2
    rep.cases += 1
    if diameter > 2 * b + K:
        rep.counterexamples.append({"check": "diameter", "diameter": diameter, "bound": 2 * b + K})
    rep.values = {"n_g2": g.n, "alpha": g2.params["alpha"], "beta": b, "c": c, "C": inst.params["C"],
                  "n_h": h.n, "k": inst.budget_k, "diameter": diameter, "two_beta": 2 * b,
                  "measured_K": diameter - 2 * b, "K_bound": K, "gadget_histogram": hist,
                  "log_k_over_log_n": round(math.log(inst.budget_k) / math.log(h.n), 3),
                  "max_pebbles": caps}
    return _timed(rep, start)


# -- solver and number suites -----------------------------------------------------------------------

def verify_greedy_trees(count: int = 200, max_n: int = 8, max_pebbles: int = 10, seed: int = 0) -> Report:
    """greedy_tree_max against the exhaustive maximum on random trees, every target."""
    from .solvers import all_reachable_states

    start = time.monotonic()
    rep = Report("greedy-trees", seed=seed)
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, max_n)
        t = random_tree(n, rng)
        p = random_distribution(n, rng.randint(0, max_pebbles), rng)
        states = all_reachable_states(t, p)
        for r in range(n):
            rep.cases += 1
            best = max(s[r] for s in states)
            got = greedy_tree_max(t, p, r)
            if got != best:
                rep.counterexamples.append({"edges": t.sorted_edges, "p": p, "r": r, "greedy": got, "max": best})
    return _timed(rep, start)


def _cut_vertex(g: Graph) -> bool:
    return any(not g.remove_vertices({v})[0].is_connected() for v in range(g.n)) if g.n > 2 else False


def _cut_vertex_family(g: Graph):
    """Size-n distributions that cannot reach w: 3 on u, 0 on the cut vertex v and on w, 1 elsewhere."""
    for v in range(g.n):
        sub, keep = g.remove_vertices({v})
        comps = [[keep[x] for x in c] for c in sub.components()]
        if len(comps) < 2:
            continue
        for a, b in itertools.permutations(range(len(comps)), 2):
            u, w = comps[a][0], comps[b][0]
            p = [1] * g.n
            p[u], p[v], p[w] = 3, 0, 0
            yield tuple(p), w


def verify_numbers(max_n: int = 4, budget: SearchBudget | None = None) -> Report:
    """Pebbling-number goldens and bounds on all small connected graphs."""
    from .numbers import pi, trivial_upper_bound

    start = time.monotonic()
    rep = Report("numbers")
    for n, want in ((2, 2), (3, 4), (4, 8)):
        got = pi(path_graph(n), budget)
        rep.cases += 1
        if got != want:
            rep.counterexamples.append({"path": n, "pi": got, "expected": want})
    table = []
    for n in range(1, max_n + 1):
        for g in small_graphs(n):
            value = pi(g, budget)
            hat, _ = pi_hat(g, budget)
            cut = _cut_vertex(g)
            table.append({"edges": g.sorted_edges, "n": n, "pi": value, "pi_hat": hat, "cut_vertex": cut})
            rep.cases += 1
            ok = n <= value <= trivial_upper_bound(g) and hat <= -(-2 * n // 3)
            if cut:
                ok &= value > n
            if not ok:
                rep.counterexamples.append(table[-1])
            for bad in _cut_vertex_family(g):
                rep.cases += 1
                p, w = bad
                if reachable(g, p, w, 1, budget).value:
                    rep.counterexamples.append({"edges": g.sorted_edges, "p": p, "w": w, "check": "cut family"})
    rep.values = {"graphs": table}
    return _timed(rep, start)


def verify_pi_hat_paths(max_n: int = 6, budget: SearchBudget | None = None) -> Report:
    start = time.monotonic()
    rep = Report("pi-hat-paths")
    for n in range(1, max_n + 1):
        got, _ = pi_hat(path_graph(n), budget)
        rep.cases += 1
        rep.values[n] = got
        if got != -(-2 * n // 3):
            rep.counterexamples.append({"n": n, "pi_hat": got})
    return _timed(rep, start)


def verify_gamma(max_n: int = 4, budget: SearchBudget | None = None) -> Report:
    """Cover pebbling closed form against enumeration, unit demand."""
    from .numbers import cover_number_brute, gamma

    start = time.monotonic()
    rep = Report("gamma")
    for g, want in ((complete_graph(2), 3), (path_graph(3), 7)):
        rep.cases += 1
        if gamma(g, [1] * g.n) != want:
            rep.counterexamples.append({"edges": g.sorted_edges, "expected": want})
    for n in range(1, max_n + 1):
        for g in small_graphs(n):
            unit = [1] * n
            closed, brute = gamma(g, unit), cover_number_brute(g, unit, budget)
            rep.cases += 1
            if closed != brute:
                rep.counterexamples.append({"edges": g.sorted_edges, "closed": closed, "brute": brute})
    return _timed(rep, start)


SUITES = {
    "orderability": verify_orderability_suite,
    "greedy-trees": verify_greedy_trees,
    "numbers": verify_numbers,
    "pi-hat-paths": verify_pi_hat_paths,
    "gamma": verify_gamma,
    "npr": verify_npr,
    "subdivision": verify_subdivision,
    "pc": verify_pc,
    "hampath": verify_hampath,
    "star-lemma": verify_star_lemma,
    "gadgets": verify_gadget_suite,
    "opn": verify_opn,
    "dpr": verify_dpr,
    "rpn-structure": verify_rpn_structure,
}

SEEDED = {"greedy-trees", "subdivision", "gadgets"}


def run_suite(name: str, seed: int | None = None, budget: SearchBudget | None = None) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    kwargs = {}
    if seed is not None and name in SEEDED:
        kwargs["seed"] = seed
    if budget is not None and "budget" in fn.__code__.co_varnames:
        kwargs["budget"] = budget
    return fn(**kwargs)
