import pytest
from hypothesis import given, settings

from pebbling import formats
from pebbling.core import Signature
from pebbling.formats import ParseError
from pebbling.reductions import QuantifiedCnf
from strategies import graph_with_distribution, signatures

P3_TEXT = "c path\ng 3 2\ne 0 1\ne 1 2\np 0 4\nr 2\n"


def test_parse_pebble_graph():
    pg = formats.parse_pebble_graph(P3_TEXT)
    assert pg.graph.n == 3 and pg.graph.edge_count == 2
    assert pg.distribution == (4, 0, 0) and pg.target == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 0 1\n", 1),
        ("g 2 1\ne 0 0\n", 2),
        ("g 2 1\ne 0 5\n", 2),
        ("g 2 1\ne 0 1\ne 1 0\n", 3),
        ("g 2 1\ne 0 1\np 0 -1\n", 3),
        ("g 2 1\ne 0 1\nx 1\n", 3),
        ("g 2 1\ne 0 1\nr 0\nr 1\n", 4),
        ("g 2 1\ne zero 1\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        formats.parse_pebble_graph(text, "f.txt")
    assert exc.value.line == line
    assert f"f.txt:{line}" in str(exc.value)


def test_edge_count_mismatch():
    with pytest.raises(ParseError):
        formats.parse_pebble_graph("g 3 2\ne 0 1\n")


@given(graph_with_distribution(max_n=6, max_total=9, connected=False))
@settings(max_examples=80)
def test_pebble_graph_round_trip(gp):
    g, p = gp
    back = formats.parse_pebble_graph(formats.format_pebble_graph(g, p, 0, ["note"]))
    assert back.graph == g and back.distribution == p and back.target == 0


@given(signatures(n=5, max_total=8))
@settings(max_examples=80)
def test_signature_round_trip(d):
    assert formats.parse_signature(formats.format_signature(d)) == d


def test_labels_and_metadata_round_trip():
    labels = {0: "r", 1: "X1.v2", 2: "C0.or"}
    assert formats.parse_labels(formats.format_labels(labels), 3) == labels
    recs = [{"a": 1, "b": [1, 2]}, {"kind": "npr"}]
    assert formats.parse_metadata(formats.format_metadata(recs)) == recs


def test_qdimacs_round_trip():
    f = QuantifiedCnf(3, frozenset({0}), frozenset({1, 2}), ((1, 2), (-1, 3), (-2, -3, 1)))
    assert formats.parse_qdimacs(formats.format_qdimacs(f)) == f


@pytest.mark.parametrize(
    "text",
    ["1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 1\na 1 0\na 1 0\n1 0\n"],
)
def test_qdimacs_errors(text):
    with pytest.raises(ParseError):
        formats.parse_qdimacs(text)


def test_parse_distribution_ignores_other_lines():
    assert formats.parse_distribution(P3_TEXT, 3) == (4, 0, 0)
    assert formats.format_distribution((0, 2, 1)) == "p 1 2\np 2 1\n"
    assert formats.parse_signature("a 0 1 2\n") == Signature({(0, 1): 2})
