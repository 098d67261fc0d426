"""Text formats: pebble graphs, signatures, vertex labels, metadata and QDIMACS."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path

from .core import Graph, PebblingError, Signature


class ParseError(PebblingError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


@dataclass
class PebbleGraph:
    graph: Graph
    distribution: tuple[int, ...]
    target: int | None = None


def _ints(tokens: list[str], count: int, lineno: int, src) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integer field(s), got {len(tokens)}", lineno, src)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(tokens)!r}", lineno, src) from None


def parse_pebble_graph(text: str, source: str | None = None) -> PebbleGraph:
    n = m = None
    edges: set[tuple[int, int]] = set()
    counts: dict[int, int] = {}
    target = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if n is None:
            if tag != "g":
                raise ParseError("first non-comment line must be the 'g n m' header", lineno, source)
            n, m = _ints(rest, 2, lineno, source)
            if n < 0 or m < 0:
                raise ParseError("negative size in header", lineno, source)
            continue
        if tag == "g":
            raise ParseError("duplicate header", lineno, source)
        if tag == "e":
            u, v = _ints(rest, 2, lineno, source)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge endpoint out of range [0,{n})", lineno, source)
            if u == v:
                raise ParseError("loops are not allowed", lineno, source)
            key = (min(u, v), max(u, v))
            if key in edges:
                raise ParseError(f"duplicate edge {u} {v}", lineno, source)
            edges.add(key)
        elif tag == "p":
            v, c = _ints(rest, 2, lineno, source)
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} out of range [0,{n})", lineno, source)
            if c < 0:
                raise ParseError("negative pebble count", lineno, source)
            if v in counts:
                raise ParseError(f"duplicate pebble line for vertex {v}", lineno, source)
            counts[v] = c
        elif tag == "r":
            (v,) = _ints(rest, 1, lineno, source)
            if not 0 <= v < n:
                raise ParseError(f"target {v} out of range [0,{n})", lineno, source)
            if target is not None:
                raise ParseError("more than one target line", lineno, source)
            target = v
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno, source)
    if n is None:
        raise ParseError("missing 'g n m' header", None, source)
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", None, source)
    dist = tuple(counts.get(v, 0) for v in range(n))
    return PebbleGraph(Graph(n, edges), dist, target)


def format_pebble_graph(g: Graph, p: Iterable[int] | None = None, target: int | None = None,
                        comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"g {g.n} {g.edge_count}")
    lines += [f"e {u} {v}" for u, v in g.sorted_edges]
    if p is not None:
        lines += [f"p {v} {c}" for v, c in enumerate(p) if c]
    if target is not None:
        lines.append(f"r {target}")
    return "\n".join(lines) + "\n"


def format_distribution(p: Iterable[int]) -> str:
    return "".join(f"p {v} {c}\n" for v, c in enumerate(p) if c)


def parse_distribution(text: str, n: int, source: str | None = None) -> tuple[int, ...]:
    """Read ``p`` lines only (a pebble-graph file's header and edges are ignored)."""
    counts = [0] * n
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line.startswith("p "):
            continue
        v, c = _ints(line.split()[1:], 2, lineno, source)
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} out of range [0,{n})", lineno, source)
        if c < 0:
            raise ParseError("negative pebble count", lineno, source)
        if v in seen:
            raise ParseError(f"duplicate pebble line for vertex {v}", lineno, source)
        seen.add(v)
        counts[v] = c
    return tuple(counts)


def parse_signature(text: str, source: str | None = None) -> Signature:
    arcs: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if tag != "a":
            raise ParseError(f"unknown line type {tag!r}", lineno, source)
        u, v, mult = _ints(rest, 3, lineno, source)
        if u < 0 or v < 0:
            raise ParseError("negative vertex index", lineno, source)
        if u == v:
            raise ParseError("loop arcs are not allowed", lineno, source)
        if mult < 1:
            raise ParseError("arc multiplicity must be at least 1", lineno, source)
        if (u, v) in arcs:
            raise ParseError(f"duplicate arc {u} {v}", lineno, source)
        arcs[(u, v)] = mult
    return Signature(arcs)


def format_signature(d: Signature) -> str:
    return "".join(f"a {u} {v} {m}\n" for (u, v), m in d.items())


def parse_labels(text: str, n: int | None = None, source: str | None = None) -> dict[int, str]:
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split(maxsplit=2)
        if parts[0] != "l" or len(parts) != 3:
            raise ParseError("expected 'l <vertex> <label>'", lineno, source)
        (v,) = _ints(parts[1:2], 1, lineno, source)
        if v < 0 or (n is not None and v >= n):
            raise ParseError(f"vertex {v} out of range", lineno, source)
        if v in labels:
            raise ParseError(f"duplicate label for vertex {v}", lineno, source)
        labels[v] = parts[2]
    return labels


def format_labels(labels: Mapping[int, str]) -> str:
    return "".join(f"l {v} {labels[v]}\n" for v in sorted(labels))


def format_metadata(records: Iterable[Mapping]) -> str:
    return "".join(json.dumps(dict(r), sort_keys=True) + "\n" for r in records)


def parse_metadata(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


# -- quantified CNF -----------------------------------------------------------

def parse_qdimacs(text: str, source: str | None = None):
    """Parse QDIMACS-style text into a :class:`~pebbling.reductions.QuantifiedCnf`.

    Literals keep the file's signed 1-based encoding; variable sets are
    0-based.  Variables with no quantifier line are existential.
    """
    from .reductions import QuantifiedCnf

    nvars = nclauses = None
    universal: set[int] = set()
    existential: set[int] = set()
    clauses: list[list[int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if nvars is not None:
                raise ParseError("duplicate problem line", lineno, source)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno, source)
            nvars, nclauses = _ints(tokens[2:], 2, lineno, source)
            continue
        if nvars is None:
            raise ParseError("clause or quantifier before problem line", lineno, source)
        if tokens[0] in ("a", "e"):
            vals = _ints(tokens[1:], len(tokens) - 1, lineno, source)
            if not vals or vals[-1] != 0:
                raise ParseError("quantifier line must end with 0", lineno, source)
            for x in vals[:-1]:
                if not 1 <= x <= nvars:
                    raise ParseError(f"variable {x} out of range", lineno, source)
                if x - 1 in universal or x - 1 in existential:
                    raise ParseError(f"variable {x} quantified twice", lineno, source)
                (universal if tokens[0] == "a" else existential).add(x - 1)
            continue
        vals = _ints(tokens, len(tokens), lineno, source)
        for lit in vals:
            if lit == 0:
                clauses.append(pending)
                pending = []
                continue
            if not 1 <= abs(lit) <= nvars:
                raise ParseError(f"literal {lit} out of range", lineno, source)
            pending.append(lit)
    if nvars is None:
        raise ParseError("missing problem line", None, source)
    if pending:
        raise ParseError("last clause is not terminated by 0", None, source)
    if len(clauses) != nclauses:
        raise ParseError(f"problem line declares {nclauses} clauses, found {len(clauses)}", None, source)
    existential |= set(range(nvars)) - universal - existential
    return QuantifiedCnf(nvars, frozenset(universal), frozenset(existential),
                         tuple(tuple(c) for c in clauses))


def format_qdimacs(f) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    if f.universal:
        lines.append("a " + " ".join(str(v + 1) for v in sorted(f.universal)) + " 0")
    if f.existential:
        lines.append("e " + " ".join(str(v + 1) for v in sorted(f.existential)) + " 0")
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text()
