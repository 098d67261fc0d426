"""Orderability of move signatures, witness orderings and signature normal forms."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .core import PebblingError, Signature, balances, find_cycle


class NotAcyclic(PebblingError):
    pass


class NotOrderable(PebblingError):
    pass


@dataclass(frozen=True)
class Diagnosis:
    """Why a signature is (not) orderable.

    ``kind`` is ``"ok"``, ``"balance"`` or ``"sink-condition"``; ``vertex`` is
    a negative-balance vertex for ``balance`` and ``component`` the offending
    sink component for ``sink-condition``.
    """

    kind: str
    vertex: int | None = None
    component: tuple[int, ...] | None = None

    def __str__(self) -> str:
        if self.kind == "balance":
            return f"balance: vertex {self.vertex} has negative balance"
        if self.kind == "sink-condition":
            comp = " ".join(map(str, self.component or ()))
            return f"sink-condition: sink component {{{comp}}} has no vertex with positive balance"
        return "ok"


@dataclass(frozen=True)
class ComponentDigraph:
    """Strong components of a signature's arc support and the arcs between them.

    ``components`` lists every vertex touched by the signature (plus any
    extra vertices requested), grouped into strong components; ``index``
    maps a vertex to its component number.
    """

    components: tuple[tuple[int, ...], ...]
    index: dict[int, int] = field(repr=False)
    component_arcs: frozenset[tuple[int, int]]
    trivial: tuple[bool, ...]

    def is_sink(self, c: int) -> bool:
        return not any(a == c for a, _ in self.component_arcs)

    def is_source(self, c: int) -> bool:
        return not any(b == c for _, b in self.component_arcs)

    def sinks(self) -> list[int]:
        return [c for c in range(len(self.components)) if self.is_sink(c)]

    def nontrivial_sinks(self) -> list[int]:
        return [c for c in self.sinks() if not self.trivial[c]]


def strong_components(succ: dict[int, list[int]], vertices: Iterable[int]) -> list[list[int]]:
    """Iterative Tarjan; components come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            nbrs = succ.get(v, ())
            recursed = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recursed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recursed:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def component_digraph(d: Signature, extra: Iterable[int] = ()) -> ComponentDigraph:
    verts = d.vertices() | set(extra)
    succ = {u: sorted(vs) for u, vs in d.successors().items()}
    comps = strong_components(succ, verts)
    comps.sort(key=lambda c: c[0])
    index = {v: i for i, c in enumerate(comps) for v in c}
    carcs = frozenset((index[u], index[v]) for u, v in d if index[u] != index[v])
    trivial = tuple(len(c) == 1 and d.indegree(c[0]) == 0 and d.outdegree(c[0]) == 0 for c in comps)
    return ComponentDigraph(tuple(tuple(c) for c in comps), index, carcs, trivial)


def is_orderable(d: Signature, p: Sequence[int]) -> tuple[bool, Diagnosis]:
    """Decide orderability via the balance and sink conditions.

    Cost depends on the number of distinct arcs only; multiplicities enter
    through degree sums.
    """
    bal = balances(d, p)
    for v, b in enumerate(bal):
        if b < 0:
            return False, Diagnosis("balance", vertex=v)
    if not d:
        return True, Diagnosis("ok")
    cd = component_digraph(d)
    for c in cd.nontrivial_sinks():
        comp = cd.components[c]
        if not any(bal[v] >= 1 for v in comp):
            return False, Diagnosis("sink-condition", component=comp)
    return True, Diagnosis("ok")


def orderable(d: Signature, p: Sequence[int]) -> bool:
    return is_orderable(d, p)[0]


def is_orderable_acyclic(d: Signature, p: Sequence[int]) -> bool:
    if not d.is_acyclic():
        raise NotAcyclic("signature contains a directed cycle")
    return all(b >= 0 for b in balances(d, p))


def extract_ordering(d: Signature, p: Sequence[int]) -> list[tuple[int, int]]:
    """Return a legal move sequence from ``p`` whose signature is ``d``.

    Follows the constructive induction behind the characterization: fire a
    source vertex; else recurse into a source component; else, with only
    disjoint strong components left, pick a move that keeps the component
    orderable.  Ties go to the lowest vertex, then the lowest arc.
    """
    ok, diag = is_orderable(d, p)
    if not ok:
        raise NotOrderable(str(diag))
    arcs = dict(d.items())
    cur = list(p)
    moves: list[tuple[int, int]] = []

    def fire(u: int, v: int) -> None:
        cur[u] -= 2
        cur[v] += 1
        arcs[(u, v)] -= 1
        if not arcs[(u, v)]:
            del arcs[(u, v)]
        moves.append((u, v))

    while arcs:
        rest = Signature(arcs)
        u, v = _next_move(rest, cur)
        fire(u, v)
    return moves


def _next_move(d: Signature, cur: list[int]) -> tuple[int, int]:
    """First candidate, in proof order, whose removal leaves an orderable rest."""
    for u, v in _candidates(d, cur):
        if cur[u] >= 2 and orderable(d.without((u, v)), _after(cur, u, v)):
            return u, v
    raise NotOrderable("no orderability-preserving move found")


def _candidates(d: Signature, cur: list[int]):
    # Source vertex with an out-arc: its moves never depend on anything else.
    for v in sorted(d.vertices()):
        if d.indegree(v) == 0 and d.outdegree(v) > 0:
            yield v, min(b for (a, b) in d if a == v)
    cd = component_digraph(d)
    # A source component that is not a sink is ordered first.
    order = [c for c, _ in enumerate(cd.components) if cd.is_source(c) and not cd.is_sink(c)]
    order += [c for c in range(len(cd.components)) if c not in order]
    for c in order:
        comp = cd.components[c]
        inner = d.restricted_to(comp)
        if inner:
            yield from _strong_candidates(inner, cur, comp)
    yield from sorted(d)


def _strong_candidates(d: Signature, cur: list[int], comp: Sequence[int]):
    legal = [(u, v) for (u, v) in d if cur[u] >= 2]
    # Moves that keep the component strongly connected.
    for u, v in legal:
        rest = d.without((u, v))
        if rest and _is_strong(rest, comp):
            yield u, v
    bal = balances(d, cur)
    zs = [x for x in sorted(comp) if bal[x] >= 1]
    for u, v in legal:
        outs = sorted(b for (a, b) in d if a == u and b != v)
        if not outs or not zs:
            yield u, v
            continue
        # uv would cut the component: avoid the arc on the path toward a
        # positive-balance vertex.
        w = outs[0]
        path = _bfs_path(d, u, zs[0])
        on_path = path is not None and len(path) > 1 and path[1] == v
        yield ((u, w) if on_path else (u, v))
        yield u, v


def _after(cur: Sequence[int], u: int, v: int) -> list[int]:
    out = list(cur)
    out[u] -= 2
    out[v] += 1
    return out


def _is_strong(d: Signature, comp: Sequence[int]) -> bool:
    verts = [v for v in comp if d.indegree(v) or d.outdegree(v)]
    if len(verts) != len(comp):
        return False
    succ = d.successors()
    pred: dict[int, list[int]] = {}
    for a, b in d:
        pred.setdefault(b, []).append(a)
    for adj in (succ, pred):
        seen = {verts[0]}
        queue = deque([verts[0]])
        while queue:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(verts):
            return False
    return True


def _bfs_path(d: Signature, s: int, t: int) -> list[int] | None:
    succ = {u: sorted(vs) for u, vs in d.successors().items()}
    prev = {s: s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            path = [t]
            while path[-1] != s:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in succ.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def strip_cycles(d: Signature, p: Sequence[int]) -> Signature:
    """Remove directed cycles one unit at a time; balances never drop."""
    if not orderable(d, p):
        raise NotOrderable("signature is not orderable")
    arcs = dict(d.items())
    while True:
        cyc = find_cycle(arcs)
        if cyc is None:
            return Signature(arcs)
        for i, u in enumerate(cyc):
            a = (u, cyc[(i + 1) % len(cyc)])
            arcs[a] -= 1
            if not arcs[a]:
                del arcs[a]


def _proper_sinks(d: Signature) -> list[int]:
    return sorted(v for v in d.vertices() if d.outdegree(v) == 0 and d.indegree(v) > 0)


def boost_target(d: Signature, p: Sequence[int], w: int) -> Signature:
    """Delete arcs into sinks other than ``w`` until none remain.

    Each deletion raises the tail's balance by two and lowers only the
    sink's; the result keeps every balance outside deleted sinks.
    """
    if not d.is_acyclic():
        raise NotAcyclic("boost_target needs an acyclic signature")
    if not is_orderable_acyclic(d, p):
        raise NotOrderable("signature is not orderable")
    arcs = dict(d.items())
    while True:
        cur = Signature(arcs)
        sinks = [s for s in _proper_sinks(cur) if s != w]
        if not sinks:
            return cur
        s = sinks[0]
        a = min(x for x in arcs if x[1] == s)
        arcs[a] -= 1
        if not arcs[a]:
            del arcs[a]


def check_minimum_signature(d: Signature, p: Sequence[int], r: int, k: int) -> bool:
    """Normal-form predicate for a minimum signature that puts ``k`` pebbles on ``r``."""
    if not d.is_acyclic():
        return False
    if any(s != r for s in _proper_sinks(d)):
        return False
    if d.outdegree(r) != 0:
        return False
    return d.indegree(r) == k - p[r]


def check_target_set_outdegrees(d: Signature, targets: Iterable[int], k: int) -> bool:
    if k <= 0:
        raise ValueError("k must be positive")
    return all(2 * d.outdegree(v) < k for v in targets)


def normalize_witness(d: Signature, p: Sequence[int], r: int, k: int) -> Signature:
    """Trim an orderable signature that gives ``r`` at least ``k`` pebbles into minimum form."""
    d = strip_cycles(d, p)
    d = boost_target(d, p, r)
    arcs = dict(d.items())
    # out-arcs of r are useless for r; drop them (only raises r's balance).
    for a in [a for a in arcs if a[0] == r]:
        del arcs[a]
    d = boost_target(Signature(arcs), p, r)
    excess = p[r] + d.indegree(r) - k
    arcs = dict(d.items())
    while excess > 0 and d.indegree(r) > 0:
        a = min(x for x in arcs if x[1] == r)
        arcs[a] -= 1
        if not arcs[a]:
            del arcs[a]
        excess -= 1
        d = boost_target(Signature(arcs), p, r)
        arcs = dict(d.items())
    return d
