"""Scaled-down runs of the verification suites (full sizes live in test_acceptance)."""

import json

import pytest

from pebbling import verify as V
from pebbling.core import complete_graph, path_graph
from pebbling.reductions import GadgetSpec, build_gadget


def test_report_json_and_summary():
    rep = V.Report("x", cases=2)
    assert rep.ok and "x: ok" in rep.summary()
    assert json.loads(rep.to_json())["ok"] is True
    rep.undecided.append({})
    assert not rep.ok


def test_small_graph_counts():
    assert [len(V.small_graphs(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]
    assert len(V.small_graphs(3, connected=False)) == 4


def test_hamiltonian_oracle():
    assert V.has_hamiltonian_path(path_graph(4))
    assert not V.has_hamiltonian_path(V.small_graphs(4)[0]) or V.small_graphs(4)[0].edge_count == 3


def test_canonical_formulas_are_canonical_and_distinct():
    fs = V.canonical_formulas(3, 3)
    assert fs and all(f.is_canonical() for f in fs)
    assert len({f.clauses for f in fs}) == len(fs)


def test_permutation_oracle_small():
    rep = V.verify_orderability_suite(max_total=3, max_pebbles=2)
    assert rep.ok and rep.cases > 0


@pytest.mark.parametrize(
    "fn, kwargs",
    [
        (V.verify_greedy_trees, {"count": 25}),
        (V.verify_numbers, {"max_n": 3}),
        (V.verify_pi_hat_paths, {"max_n": 5}),
        (V.verify_gamma, {"max_n": 3}),
        (V.verify_npr, {"max_vars": 3, "max_clauses": 3}),
        (V.verify_subdivision, {"count": 2}),
        (V.verify_pc, {"max_n": 3, "max_pebbles": 4}),
        (V.verify_hampath, {"max_n": 4}),
        (V.verify_star_lemma, {}),
        (V.verify_opn, {"max_n": 2, "max_m": 1}),
    ],
    ids=lambda x: getattr(x, "__name__", ""),
)
def test_small_suites(fn, kwargs):
    rep = fn(**kwargs)
    assert rep.ok, rep.counterexamples[:3] or rep.undecided[:3]
    assert rep.cases > 0


def test_unsatisfiable_formula_blocks_target():
    rep = V.verify_npr(max_vars=4, max_clauses=5)
    assert rep.ok
    assert rep.values["unsatisfiable"] >= 1


@pytest.mark.parametrize("kind", ["null", "fork", "eye"])
def test_gadget_certified_at_smallest_size(kind):
    rep = V.verify_gadget(GadgetSpec(kind, 2, 2), samples=5)
    assert rep.ok, rep.counterexamples[:3]


def test_fork_thresholds_and_greedy():
    t = V.gadget_thresholds(GadgetSpec("fork", 2, 2))
    assert (t["potency"], t["overflow"]) == (17, 35)
    gad = build_gadget(GadgetSpec("fork", 2, 2))
    q = gad.criticals[0]
    assert not V.gadget_overflows(gad, q)
    assert V.attachment_supply(gad, q) == {"v": 1}


def test_gap_constant_values():
    assert V.gap_constant(2) == 10
    assert V.gap_constant(3) == 22


def test_opn_programs_on_tiny_instance():
    from pebbling.reductions import build_opn_instance

    from pebbling.core import Graph
    from pebbling.solvers import is_determinative

    # both instances are determinative: K1 trivially, K2 because 1 is unreachable
    for g, p, r, expect in ((Graph(1, []), (1,), 0, True), (complete_graph(2), (1, 0), 1, False)):
        assert is_determinative(g, p, r)
        inst = build_opn_instance(g, p, r)
        assert V.opn_at_most(inst.graph, inst.budget_k, brute=True) is expect
        assert V.opn_at_most(inst.graph, inst.budget_k, core=range(g.n)) is expect


def test_run_suite_rejects_unknown():
    with pytest.raises(KeyError):
        V.run_suite("nope")


def test_hampath_round_trip_through_six_vertices():
    rep = V.verify_hampath(max_n=6)
    assert rep.ok and rep.cases == 143
