"""Instance generators for the hardness reductions.

Vertex numbering is stable: underlying-graph vertices come first in
construction order, gadget-internal vertices follow grouped per gadget.
Every builder with formula-derived default parameters accepts overrides and
records ``conforming=False`` when one is used.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import product

from .core import Graph, PebblingError


class NotRestricted(PebblingError, ValueError):
    pass


class NotCanonical(PebblingError, ValueError):
    pass


class InvalidSpec(PebblingError, ValueError):
    pass


class Collapsed(PebblingError):
    """Simplification left fewer than two clauses; ``verdict`` decides the formula."""

    def __init__(self, verdict: bool, remaining: "QuantifiedCnf"):
        super().__init__(f"formula collapsed to {len(remaining.clauses)} clause(s); verdict {verdict}")
        self.verdict = verdict
        self.remaining = remaining


# -- formulas ------------------------------------------------------------------

@dataclass(frozen=True)
class QuantifiedCnf:
    """CNF with a universal/existential split.

    Literals are signed 1-based integers (``+3`` is variable 2, ``-3`` its
    negation); ``universal``/``existential`` hold 0-based variable indices.
    """

    num_vars: int
    universal: frozenset = frozenset()
    existential: frozenset = frozenset()
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "universal", frozenset(self.universal))
        object.__setattr__(self, "existential", frozenset(self.existential))
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.universal & self.existential:
            raise ValueError("a variable cannot be both universal and existential")
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
        missing = self.variables() - self.universal - self.existential
        if missing:
            object.__setattr__(self, "existential", self.existential | missing)

    @classmethod
    def sat(cls, clauses, num_vars: int | None = None) -> QuantifiedCnf:
        clauses = [tuple(c) for c in clauses]
        n = num_vars if num_vars is not None else max((abs(l) for c in clauses for l in c), default=0)
        return cls(n, frozenset(), frozenset(range(n)), tuple(clauses))

    def variables(self) -> set[int]:
        return {abs(l) - 1 for c in self.clauses for l in c}

    def counts(self, v: int) -> tuple[int, int]:
        pos = sum(1 for c in self.clauses for l in c if l == v + 1)
        neg = sum(1 for c in self.clauses for l in c if l == -(v + 1))
        return pos, neg

    def occurrences(self, v: int) -> list[tuple[int, int, bool]]:
        """(clause index, position, positive?) for each occurrence of ``v``."""
        return [(j, i, l > 0) for j, c in enumerate(self.clauses) for i, l in enumerate(c) if abs(l) == v + 1]

    def restricted(self) -> bool:
        """At least 2 clauses, clause sizes 2-3, each variable at most 3 times."""
        if len(self.clauses) < 2:
            return False
        if any(len(c) not in (2, 3) or len({abs(l) for l in c}) != len(c) for c in self.clauses):
            return False
        return all(sum(self.counts(v)) <= 3 for v in self.variables())

    def is_canonical(self) -> bool:
        if not self.restricted():
            return False
        for v in self.variables():
            pos, neg = self.counts(v)
            if pos not in (1, 2) or neg != 1:
                return False
        return True

    def evaluate(self, assignment) -> bool:
        return all(any((l > 0) == bool(assignment[abs(l) - 1]) for l in c) for c in self.clauses)

    def satisfiable(self) -> bool:
        return any(self.evaluate(a) for a in product((False, True), repeat=self.num_vars))

    def valid_under(self, fixed: dict[int, bool]) -> bool:
        """Is the formula satisfiable once the variables in ``fixed`` are set?"""
        free = [v for v in range(self.num_vars) if v not in fixed]
        a = [False] * self.num_vars
        for v, b in fixed.items():
            a[v] = b
        for bits in product((False, True), repeat=len(free)):
            for v, b in zip(free, bits):
                a[v] = b
            if self.evaluate(a):
                return True
        return False

    def is_valid(self) -> bool:
        """Forall universal, exists existential: the formula holds."""
        univ = sorted(self.universal)
        return all(self.valid_under(dict(zip(univ, bits))) for bits in product((False, True), repeat=len(univ)))


def canonicalize_3cnf(f: QuantifiedCnf) -> QuantifiedCnf:
    """Simplify to canonical form, preserving satisfiability (validity when quantified).

    Existential pure literals are set true and their clauses dropped.  A
    universal pure literal is set false (the adversary's best move) and
    deleted from its clauses.  Variables with two negative occurrences get
    their polarity switched.  Repeats to a fixed point.
    """
    if not f.restricted():
        raise NotRestricted("formula needs >= 2 clauses of size 2-3 with each variable at most 3 times")
    clauses = [list(c) for c in f.clauses]
    while True:
        changed = False
        cur = QuantifiedCnf(f.num_vars, f.universal, f.existential, clauses)
        for v in sorted(cur.variables()):
            pos, neg = cur.counts(v)
            lit = v + 1
            if pos == 0 or neg == 0:
                sign = lit if neg == 0 else -lit
                if v in f.universal:
                    clauses = [[l for l in c if l != sign] for c in clauses]
                    if any(not c for c in clauses):
                        raise Collapsed(False, QuantifiedCnf(f.num_vars, f.universal, f.existential,
                                                             [c for c in clauses if c]))
                    if any(len(c) < 2 for c in clauses):
                        raise NotRestricted("eliminating a universal pure literal left a unit clause")
                else:
                    clauses = [c for c in clauses if sign not in c]
                changed = True
                break
            if neg == 2:
                clauses = [[-l if abs(l) == lit else l for l in c] for c in clauses]
                changed = True
                break
        if not changed:
            break
    out = QuantifiedCnf(f.num_vars, f.universal, f.existential, clauses)
    if len(clauses) < 2:
        raise Collapsed(out.is_valid(), out)
    return out


# -- instances -------------------------------------------------------------------

@dataclass
class PebblingInstance:
    graph: Graph
    distribution: tuple[int, ...]
    target: int | None = None
    budget_k: int | None = None
    labels: dict[int, str] = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    conforming: bool = True
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.distribution = tuple(self.distribution)
        if len(self.distribution) != self.graph.n:
            raise ValueError("distribution length does not match the graph")
        if self.labels:
            if set(self.labels) != set(range(self.graph.n)):
                raise ValueError("labels must cover every vertex")
            if len(set(self.labels.values())) != len(self.labels):
                raise ValueError("labels must be unique")
            if self.target is not None and self.labels[self.target] != "r":
                raise ValueError("the target must be labelled 'r'")

    def vertex(self, label: str) -> int:
        for v, l in self.labels.items():
            if l == label:
                return v
        raise KeyError(label)

    def metadata(self) -> dict:
        rec = {"n": self.graph.n, "m": self.graph.edge_count, "pebbles": sum(self.distribution),
               "target": self.target, "k": self.budget_k, "conforming": self.conforming}
        rec.update(self.params)
        return rec


class _Builder:
    """Incremental graph construction with labels."""

    def __init__(self):
        self.labels: list[str] = []
        self.pebbles: list[int] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, label: str, pebbles: int = 0) -> int:
        self.labels.append(label)
        self.pebbles.append(pebbles)
        return len(self.labels) - 1

    def link(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, u: int, v: int, length: int, prefix: str, pebbles: int = 0) -> list[int]:
        """Join u to v by a path with ``length`` edges; returns all path vertices."""
        if length < 1:
            raise InvalidSpec("path length must be at least 1")
        verts = [u]
        for i in range(1, length):
            verts.append(self.add(f"{prefix}.{i}", pebbles))
        verts.append(v)
        for a, b in zip(verts, verts[1:]):
            self.link(a, b)
        return verts

    def pendant(self, u: int, length: int, prefix: str, end_label: str) -> list[int]:
        """Path of ``length`` edges hanging from u; the far end gets ``end_label``."""
        verts = [u]
        for i in range(1, length):
            verts.append(self.add(f"{prefix}.{i}"))
        verts.append(self.add(end_label))
        for a, b in zip(verts, verts[1:]):
            self.link(a, b)
        return verts

    def graph(self) -> Graph:
        return Graph(len(self.labels), self.edges)

    def label_map(self) -> dict[int, str]:
        return dict(enumerate(self.labels))


def _balanced_tree(b: _Builder, inputs: list[int], label: str, pebbles: int) -> int:
    """Binary tree of 2-input gates over ``inputs``; returns the root gate.

    Gates are numbered in preorder; children are ordered by input index.
    """
    counter = [0]

    def make(items: list[int]) -> int:
        if len(items) == 1:
            return items[0]
        idx = counter[0]
        counter[0] += 1
        gate = b.add(f"{label}{idx}" if len(inputs) > 2 else label, pebbles)
        half = (len(items) + 1) // 2
        for child in (items[:half], items[half:]):
            pending = make(child)
            b.link(pending, gate)
        return gate

    if len(inputs) < 2:
        raise NotCanonical("gates need at least two inputs")
    return make(inputs)


def build_gnpr(f: QuantifiedCnf) -> PebblingInstance:
    """Nonrepetitive-reachability instance for a canonical formula.

    Variable gadgets (path v1 v2 v3, pebbles 2/0/2) in variable order, then
    one OR tree per clause (gates hold 1 pebble), then the AND tree (gates
    hold 0), then r.  The first positive occurrence leaves from v1, the
    second from v3, the negative occurrence from v2.
    """
    if not f.is_canonical():
        raise NotCanonical("formula is not in canonical form")
    b = _Builder()
    gadget: dict[int, tuple[int, int, int]] = {}
    for v in sorted(f.variables()):
        x1 = b.add(f"X{v + 1}.v1", 2)
        x2 = b.add(f"X{v + 1}.v2", 0)
        x3 = b.add(f"X{v + 1}.v3", 2)
        b.link(x1, x2)
        b.link(x2, x3)
        gadget[v] = (x1, x2, x3)
    source: dict[tuple[int, int], int] = {}
    positive: dict[int, list[int]] = {}
    negative: dict[int, int] = {}
    for v in sorted(f.variables()):
        x1, x2, x3 = gadget[v]
        pos_slots = [x1, x3]
        for j, i, is_pos in f.occurrences(v):
            if is_pos:
                s = pos_slots.pop(0)
                positive.setdefault(v, []).append(s)
            else:
                s = x2
                negative[v] = s
            source[(j, i)] = s
    # OR gates: the leaves of each clause tree are the variable vertices.
    # Gates are created first and wired afterwards so that each clause's
    # vertices stay contiguous.
    clause_out = []
    for j, c in enumerate(f.clauses):
        inputs = [source[(j, i)] for i in range(len(c))]
        clause_out.append(_balanced_tree(b, inputs, f"C{j + 1}.or", 1))
    root = _balanced_tree(b, clause_out, "A.and", 0)
    r = b.add("r", 0)
    b.link(root, r)
    inst = PebblingInstance(b.graph(), tuple(b.pebbles), r, None, b.label_map(), {}, True)
    inst.meta = {"gadgets": gadget, "positive": positive, "negative": negative}
    return inst


def subdivide(g: Graph, p, alpha: int, labels: dict[int, str] | None = None,
              target: int | None = None) -> PebblingInstance:
    """Replace every edge by a path with ``alpha`` internal one-pebble vertices.

    New vertices follow the originals, edge by edge in sorted order, each
    path listed from its lower endpoint.
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    b = _Builder()
    for v in range(g.n):
        b.add(labels[v] if labels else f"v{v}", p[v])
    for u, v in g.sorted_edges:
        lu, lv = b.labels[u], b.labels[v]
        if alpha == 0:
            b.link(u, v)
        else:
            b.path(u, v, alpha + 1, f"[{lu}|{lv}]", 1)
    if target is not None and labels is None:
        b.labels[target] = "r"
    inst = PebblingInstance(b.graph(), tuple(b.pebbles), target, None, b.label_map(), {"alpha": alpha}, True)
    return inst


def _least_alpha(pebbles: int, edges: int, odd: bool) -> int:
    """Least alpha with 2**alpha >= 2t and 2**alpha >= e**4 (strict and odd for the PR variant)."""
    a = 0
    while True:
        if odd:
            ok = a % 2 == 1 and (1 << a) > 2 * pebbles and (1 << a) > edges ** 4
        else:
            ok = (1 << a) >= 2 * pebbles and (1 << a) >= edges ** 4
        if ok:
            return a
        a += 1


def build_gpr(f: QuantifiedCnf, alpha: int | None = None) -> PebblingInstance:
    """Subdivided G^NPR: plain reachability encodes satisfiability."""
    base = build_gnpr(f)
    g = base.graph
    conforming = alpha is None
    if alpha is None:
        alpha = _least_alpha(sum(base.distribution), g.edge_count, odd=True)
    inst = subdivide(g, base.distribution, alpha, base.labels, base.target)
    inst.conforming = conforming
    inst.params = {"alpha": alpha, "base_n": g.n, "base_e": g.edge_count}
    inst.meta = base.meta
    return inst


def build_pc_instance(g: Graph, p, r: int) -> PebblingInstance:
    """Covering instance: q(v) = p(v) + 1 off the target; q covers all-ones iff r is reachable."""
    q = tuple(c if v == r else c + 1 for v, c in enumerate(p))
    labels = {v: ("r" if v == r else f"v{v}") for v in range(g.n)}
    inst = PebblingInstance(g, q, r, None, labels, {}, True)
    inst.meta = {"cover": [1] * g.n}
    return inst


def build_star(alpha: int, beta: int) -> tuple[Graph, dict[int, str]]:
    """K_{1,beta} with every edge stretched to length ``alpha``; center is vertex 0."""
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be positive")
    b = _Builder()
    center = b.add("center")
    for i in range(beta):
        b.pendant(center, alpha, f"arm{i}", f"leaf{i}")
    return b.graph(), b.label_map()


def star_leaves(alpha: int, beta: int) -> list[int]:
    return [i * alpha + alpha for i in range(beta)]


def build_opn_instance(g: Graph, p, r: int, alpha: int | None = None,
                       beta: int | None = None) -> PebblingInstance:
    """Optimal-pebbling instance: one star per pebble, glued at a leaf.

    Star copies follow the original vertices, in vertex order and then
    pebble order; within a copy the glued leaf is omitted.
    """
    m = sum(p)
    if m < 1:
        raise ValueError("the reachability instance needs at least one pebble")
    conforming = alpha is None and beta is None
    if alpha is None:
        alpha = (2 * (m * m + 1) - 1).bit_length()
    if beta is None:
        beta = (1 << alpha) * m + 2
    b = _Builder()
    for v in range(g.n):
        b.add("r" if v == r else f"v{v}")
    for u, v in g.sorted_edges:
        b.link(u, v)
    copy = 0
    for u in range(g.n):
        for _ in range(p[u]):
            center = b.add(f"S{copy}.center")
            for i in range(beta):
                if i == 0:
                    b.path(center, u, alpha, f"S{copy}.arm0")
                else:
                    b.pendant(center, alpha, f"S{copy}.arm{i}", f"S{copy}.leaf{i}")
            copy += 1
    k = m * (1 << alpha)
    inst = PebblingInstance(b.graph(), (0,) * len(b.labels), None, k, b.label_map(),
                            {"alpha": alpha, "beta": beta, "m": m}, conforming)
    inst.meta = {"dpr_target": r, "centers": [b.labels.index(f"S{i}.center") for i in range(copy)]}
    return inst


# -- gadgets ---------------------------------------------------------------------

@dataclass(frozen=True)
class GadgetSpec:
    kind: str
    beta: int = 2
    c: int = 2
    alpha: int = 1

    def __post_init__(self):
        if self.kind not in ("null", "fork", "eye", "star"):
            raise InvalidSpec(f"unknown gadget kind {self.kind!r}")
        if self.c < 1 or self.beta < 1 or self.alpha < 1:
            raise InvalidSpec("gadget path lengths must be positive")


@dataclass
class Gadget:
    spec: GadgetSpec
    graph: Graph
    labels: dict[int, str]
    attachments: dict[str, int]
    overflow: list[int]
    quotas: list[dict[str, int]]
    criticals: list[tuple[int, ...]]

    @property
    def critical_size(self) -> int:
        return sum(self.criticals[0]) if self.criticals else 0

    def vertex(self, label: str) -> int:
        return next(v for v, l in self.labels.items() if l == label)


def build_gadget(spec: GadgetSpec) -> Gadget:
    """Null, fork, eye or star gadget in isolation (no target vertex).

    Attachment vertices come first in the numbering, then overflow vertices.
    """
    b = _Builder()
    beta, c = spec.beta, spec.c
    big = 1 << (beta + c)
    if spec.kind == "null":
        v = b.add("v")
        w = b.add("w")
        b.path(v, w, c, "P")
        crit = [(0,) * len(b.labels)]
        return Gadget(spec, b.graph(), b.label_map(), {"v": v}, [w], [{"v": 0}], crit)
    if spec.kind == "fork":
        v = b.add("v")
        w = b.add("w")
        x = b.add("x")
        b.pendant(x, beta, "P1", "u")
        b.path(x, w, c, "P2")
        b.path(x, v, c, "P3")
        q = [0] * len(b.labels)
        q[b.labels.index("u")] = 2 * big - 1
        return Gadget(spec, b.graph(), b.label_map(), {"v": v}, [w], [{"v": 1}], [tuple(q)])
    if spec.kind == "eye":
        v1, v2, v3 = b.add("v1"), b.add("v2"), b.add("v3")
        ws = [b.add(f"w{i}") for i in range(4)]
        hs = [b.add(f"h{i}") for i in range(4)]
        for i in range(4):
            b.pendant(hs[i], beta, f"P{i}", f"u{i}")
        b.path(hs[1], v1, c, "h1-v1")
        b.path(hs[3], v3, c, "h3-v3")
        b.path(hs[0], v2, c, "h0-v2")
        b.path(hs[2], v2, c, "h2-v2")
        for i in range(4):
            b.path(hs[i], ws[(i - 1) % 4], c, f"h{i}-w{(i - 1) % 4}")
            b.path(hs[i], ws[i], c, f"h{i}-w{i}")
        n = len(b.labels)
        u = [b.labels.index(f"u{i}") for i in range(4)]
        qp = [0] * n
        qm = [0] * n
        for i in range(4):
            heavy = i in (1, 3)
            qp[u[i]] = 2 * big - 1 if heavy else big - 1
            qm[u[i]] = big - 1 if heavy else 2 * big - 1
        quotas = [{"v1": 1, "v2": 0, "v3": 1}, {"v1": 0, "v2": 2, "v3": 0}]
        return Gadget(spec, b.graph(), b.label_map(), {"v1": v1, "v2": v2, "v3": v3}, ws,
                      quotas, [tuple(qp), tuple(qm)])
    # star: glued at leaf 0, critical load 2**alpha on the center
    g, labels = build_star(spec.alpha, max(beta, 1))
    order = [star_leaves(spec.alpha, beta)[0]] + [v for v in range(g.n) if v != star_leaves(spec.alpha, beta)[0]]
    remap = {old: new for new, old in enumerate(order)}
    g2 = Graph(g.n, ((remap[a], remap[b_]) for a, b_ in g.edges))
    lab = {remap[v]: l for v, l in labels.items()}
    q = [0] * g.n
    q[remap[0]] = 1 << spec.alpha
    return Gadget(spec, g2, lab, {"v": 0}, [], [{"v": 1}], [tuple(q)])


def eye_trees(gad: Gadget) -> dict[int, list[int]]:
    """Vertex sets of the three trees T1, T2, T3 obtained by cutting at the overflow vertices."""
    g = gad.graph
    over = set(gad.overflow)
    sub, keep = g.remove_vertices(over)
    comps = [[keep[v] for v in comp] for comp in sub.components()]
    out = {}
    for comp in comps:
        names = {gad.labels[v] for v in comp}
        side = 1 if "v1" in names else 3 if "v3" in names else 2
        touching = sorted(w for w in over if any(x in comp for x in g.adjacency[w]))
        out[side] = sorted(comp + touching)
    return out


# -- RPN -------------------------------------------------------------------------

def _variable_roles(f: QuantifiedCnf, base: PebblingInstance) -> dict[int, tuple[int, int, int]]:
    """For each universal variable, its (positive, negative, positive) gadget vertices."""
    return {v: base.meta["gadgets"][v] for v in sorted(f.universal) if v in base.meta["gadgets"]}


def build_g1(f: QuantifiedCnf) -> PebblingInstance:
    """G^NPR with every universal variable gadget cut apart and its endpoints halved."""
    base = build_gnpr(f)
    roles = _variable_roles(f, base)
    cut = set()
    p = list(base.distribution)
    for x1, x2, x3 in roles.values():
        cut |= {(min(x1, x2), max(x1, x2)), (min(x2, x3), max(x2, x3))}
        p[x1] -= 1
        p[x3] -= 1
    g = Graph(base.graph.n, (e for e in base.graph.edges if e not in cut))
    inst = PebblingInstance(g, tuple(p), base.target, None, base.labels, {}, True)
    inst.meta = dict(base.meta, universal_roles=roles)
    return inst


def p1_of(g1: PebblingInstance, assignment: dict[int, bool]) -> tuple[int, ...]:
    """Distribution on G1 encoding a setting of the universal variables.

    True adds one pebble to each positive vertex (v1 and v3), false adds two
    to the negative vertex v2.
    """
    p = list(g1.distribution)
    for v, (x1, x2, x3) in g1.meta["universal_roles"].items():
        if assignment[v]:
            p[x1] += 1
            p[x3] += 1
        else:
            p[x2] += 2
    return tuple(p)


def p2_of(g2: PebblingInstance, assignment: dict[int, bool]) -> tuple[int, ...]:
    """Lift :func:`p1_of` to the subdivided graph (internal vertices keep one pebble)."""
    p1 = p1_of(g2.meta["g1"], assignment)
    base_n = g2.meta["g1"].graph.n
    return tuple(p1) + tuple(g2.distribution[base_n:])


def build_g2(f: QuantifiedCnf, alpha: int | None = None) -> PebblingInstance:
    g1 = build_g1(f)
    nu = len(g1.meta["universal_roles"])
    t = sum(g1.distribution) + 2 * nu
    conforming = alpha is None
    if alpha is None:
        alpha = _least_alpha(t, g1.graph.edge_count, odd=False)
    inst = subdivide(g1.graph, g1.distribution, alpha, g1.labels, g1.target)
    inst.conforming = conforming
    inst.params = {"alpha": alpha, "t": t, "n1": g1.graph.n, "e1": g1.graph.edge_count}
    inst.meta = dict(g1.meta, g1=g1)
    return inst


def universal_assignments(f: QuantifiedCnf):
    univ = sorted(f.universal)
    for bits in product((False, True), repeat=len(univ)):
        yield dict(zip(univ, bits))


def default_beta(n2: int, C: int) -> int:
    """ceil(lg(3 C n2)) computed exactly."""
    x = 3 * C * n2
    return max(1, (x - 1).bit_length()) if x > 1 else 1


def build_rpn_instance(f: QuantifiedCnf, beta: int | None = None, c: int = 3,
                       alpha: int | None = None, C: int | None = None) -> PebblingInstance:
    """Rooted pebbling-number instance: pi(H, r) <= k iff the formula is valid.

    Underlying graph G2 first (same numbering), then gadgets: forks (one
    per pebble of p2, by vertex), eyes (one per universal variable), nulls.
    Each overflow vertex is joined to r.
    """
    g2 = build_g2(f, alpha)
    conforming = g2.conforming and c == 3 and beta is None and C is None
    if C is None:
        from .verify import gap_constant

        C = gap_constant(c)
    if beta is None:
        beta = default_beta(g2.graph.n, C)
    r = g2.target
    b = _Builder()
    b.labels = list(g2.labels[v] for v in range(g2.graph.n))
    b.pebbles = [0] * g2.graph.n
    b.edges = list(g2.graph.edges)
    roles = g2.meta["universal_roles"]
    eye_vertices = {x for trip in roles.values() for x in trip}
    gadgets: list[dict] = []
    per_vertex = [0] * g2.graph.n
    k = 0

    def attach(spec: GadgetSpec, name: str, glue: dict[str, int]) -> None:
        nonlocal k
        gad = build_gadget(spec)
        local = {}
        for lv in range(gad.graph.n):
            lab = gad.labels[lv]
            if lab in glue:
                local[lv] = glue[lab]
            else:
                local[lv] = b.add(f"{name}.{lab}")
        for a, c_ in gad.graph.edges:
            b.link(local[a], local[c_])
        for w in gad.overflow:
            b.link(local[w], r)
        for z in glue.values():
            per_vertex[z] += 1
        crit = [{local[v]: q for v, q in enumerate(dist) if q} for dist in gad.criticals]
        gadgets.append({"kind": spec.kind, "name": name, "glue": dict(glue), "critical": crit,
                        "overflow": [local[w] for w in gad.overflow]})
        k += gad.critical_size

    fork_spec = GadgetSpec("fork", beta, c)
    for z in range(g2.graph.n):
        for i in range(g2.distribution[z]):
            attach(fork_spec, f"fork{len(gadgets)}", {"v": z})
    for v, (x1, x2, x3) in sorted(roles.items()):
        attach(GadgetSpec("eye", beta, c), f"eye{v + 1}", {"v1": x1, "v2": x2, "v3": x3})
    null_spec = GadgetSpec("null", beta, c)
    for z in range(g2.graph.n):
        if z != r and per_vertex[z] == 0:
            attach(null_spec, f"null{len(gadgets)}", {"v": z})
    g = b.graph()
    inst = PebblingInstance(g, (0,) * g.n, r, k, b.label_map(),
                            {"alpha": g2.params["alpha"], "beta": beta, "c": c, "C": C,
                             "n2": g2.graph.n}, conforming)
    inst.meta = {"g2": g2, "gadgets": gadgets, "gadgets_per_vertex": per_vertex}
    return inst


def critical_distribution(inst: PebblingInstance, assignment: dict[int, bool]) -> tuple[int, ...]:
    """Sum of per-gadget critical distributions selected by a universal setting.

    Eyes take the positive critical distribution when their variable is
    true, the negative one otherwise; forks and nulls have only one.
    """
    p = [0] * inst.graph.n
    for gd in inst.meta["gadgets"]:
        if gd["kind"] == "eye":
            v = int(gd["name"][3:]) - 1
            choice = gd["critical"][0 if assignment[v] else 1]
        else:
            choice = gd["critical"][0]
        for x, q in choice.items():
            p[x] += q
    return tuple(p)


# -- PN and annihilation -----------------------------------------------------------

def build_pn_instance(g: Graph, r: int, k: int, c_prime: float) -> PebblingInstance:
    """alpha = ceil(k n**c') copies of g sharing r; budget alpha*k."""
    n = g.n
    if n > 1 and g.is_connected() and g.diameter() > c_prime * math.log2(n):
        warnings.warn("diameter exceeds c' lg n; the equivalence is not guaranteed", stacklevel=2)
    alpha = math.ceil(k * n ** c_prime)
    b = _Builder()
    for v in range(n):
        b.add("r" if v == r else f"G0.v{v}")
    for u, v in g.sorted_edges:
        b.link(u, v)
    for copy in range(1, alpha):
        local = {r: r}
        for v in range(n):
            if v != r:
                local[v] = b.add(f"G{copy}.v{v}")
        for u, v in g.sorted_edges:
            b.link(local[u], local[v])
    return PebblingInstance(b.graph(), (0,) * len(b.labels), r, alpha * k, b.label_map(),
                            {"copies": alpha, "k": k, "c_prime": c_prime}, True)


def build_annihilation_from_hampath(g: Graph) -> PebblingInstance:
    """Apex vertex (index n, 2 pebbles) joined to everything; one pebble elsewhere."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    n = g.n
    h = Graph(n + 1, list(g.edges) + [(v, n) for v in range(n)])
    labels = {v: f"v{v}" for v in range(n)}
    labels[n] = "apex"
    return PebblingInstance(h, (1,) * n + (2,), None, None, labels, {}, True)
