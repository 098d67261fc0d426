import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.core import Graph, complete_graph, path_graph
from pebbling.reductions import (
    Collapsed,
    GadgetSpec,
    InvalidSpec,
    NotCanonical,
    NotRestricted,
    QuantifiedCnf,
    build_annihilation_from_hampath,
    build_gadget,
    build_gnpr,
    build_gpr,
    build_opn_instance,
    build_pc_instance,
    build_pn_instance,
    build_star,
    canonicalize_3cnf,
    eye_trees,
    subdivide,
)
from pebbling.solvers import annihilation, coverable, reachable
from pebbling.verify import FIG1, canonical_formulas
from strategies import graphs

TWO = QuantifiedCnf.sat([(1, 2), (-1, -2)])


def test_canonical_predicate():
    assert TWO.is_canonical()
    assert FIG1.is_canonical()
    assert not QuantifiedCnf.sat([(1, 2)]).is_canonical()


def test_canonicalize_fixed_point():
    assert canonicalize_3cnf(TWO) == TWO


def test_canonicalize_pure_positive():
    f = QuantifiedCnf.sat([(1, 2), (2, 3), (-2, -3)])
    out = canonicalize_3cnf(f)
    assert out.is_canonical()
    assert (1, 2) not in out.clauses
    assert out.satisfiable() == f.satisfiable()


def test_canonicalize_flips_double_negative():
    f = QuantifiedCnf.sat([(-1, 2), (-1, -2), (1, 3), (-3, 2)])
    out = canonicalize_3cnf(f)
    assert out.counts(0) == (2, 1)
    assert out.satisfiable() == f.satisfiable()


def test_canonicalize_errors():
    with pytest.raises(NotRestricted):
        canonicalize_3cnf(QuantifiedCnf.sat([(1, 2)]))
    with pytest.raises(Collapsed) as exc:
        canonicalize_3cnf(QuantifiedCnf.sat([(1, 2), (1, 3)]))
    assert exc.value.verdict is True


def test_gnpr_small_example():
    inst = build_gnpr(TWO)
    assert inst.graph.n == 10
    assert sum(inst.distribution) == 10
    assert inst.graph.edge_count == 11
    assert inst.labels[inst.target] == "r"
    with pytest.raises(NotCanonical):
        build_gnpr(QuantifiedCnf.sat([(1, 2), (1, 2)]))


def test_gnpr_fig1_goldens():
    inst = build_gnpr(FIG1)
    assert (inst.graph.n, inst.graph.edge_count) == (22, 27)
    assert nonrep_true(inst)


def nonrep_true(inst):
    from pebbling.solvers import nonrepetitive_reachable

    return nonrepetitive_reachable(inst.graph, inst.distribution, inst.target).value


@pytest.mark.parametrize("f", canonical_formulas(3, 3))
def test_gnpr_structure(f):
    inst = build_gnpr(f)
    g = inst.graph
    assert max(g.degree(v) for v in range(g.n)) <= 3
    assert max(inst.distribution) <= 2
    assert g.n <= 5 * (f.num_vars + len(f.clauses)) + 1


def test_subdivide_examples():
    k2 = complete_graph(2)
    s = subdivide(k2, (0, 0), 2)
    # originals keep indices 0 and 1; the path runs 0-2-3-1
    assert s.graph == Graph(4, [(0, 2), (2, 3), (3, 1)]) and s.distribution == (0, 0, 1, 1)
    assert subdivide(path_graph(3), (1, 2, 3), 0).graph == path_graph(3)


@given(graphs(1, 5, connected=True), st.integers(0, 3))
@settings(max_examples=40)
def test_subdivide_counts_and_distances(g, alpha):
    s = subdivide(g, (0,) * g.n, alpha).graph
    assert s.n == g.n + alpha * g.edge_count
    d0 = g.distances_from(0)
    ds = s.distances_from(0)
    assert all(ds[v] == (1 + alpha) * d0[v] for v in range(g.n))


def test_gpr_alpha_and_bipartite():
    inst = build_gpr(TWO)
    assert inst.params["alpha"] == 15 and inst.conforming
    assert inst.graph.is_bipartite()
    assert not build_gpr(TWO, 1).conforming


def test_pc_examples():
    inst = build_pc_instance(complete_graph(2), (2, 0), 1)
    assert inst.distribution == (3, 0)
    p3 = path_graph(3)
    for p, expect in (((4, 0, 0), True), ((3, 0, 0), False)):
        q = build_pc_instance(p3, p, 2).distribution
        assert reachable(p3, p, 2).value == expect
        assert coverable(p3, q, (1, 1, 1)).value == expect


def test_star_examples():
    g, labels = build_star(3, 5)
    assert (g.n, g.edge_count) == (16, 15)
    assert build_star(1, 4)[0].degree(0) == 4
    assert build_star(4, 1)[0] == path_graph(5)


def test_opn_parameters():
    inst = build_opn_instance(path_graph(2), (2, 0), 1)
    assert inst.params == {"alpha": 4, "beta": 34, "m": 2} and inst.budget_k == 32
    inst = build_opn_instance(path_graph(2), (1, 0), 1)
    assert inst.params == {"alpha": 2, "beta": 6, "m": 1} and inst.budget_k == 4
    assert inst.graph.n == 2 + 6 * 2


def test_null_gadget_is_a_path():
    gad = build_gadget(GadgetSpec("null", c=3))
    g = gad.graph
    assert g.n == 4 and g.is_tree() and max(g.degree(v) for v in range(4)) == 2
    assert gad.critical_size == 0


def test_fork_is_a_tree_after_removing_w():
    gad = build_gadget(GadgetSpec("fork", 2, 2))
    assert gad.graph.is_tree()
    assert gad.critical_size == 31


def test_eye_components():
    gad = build_gadget(GadgetSpec("eye", 2, 2))
    sub, keep = gad.graph.remove_vertices(set(gad.overflow))
    comps = [{gad.labels[keep[v]] for v in comp} for comp in sub.components()]
    assert len(comps) == 3
    assert any({"u0", "u2"} <= c for c in comps)
    trees = eye_trees(gad)
    assert sorted(trees) == [1, 2, 3]


def test_invalid_gadget_spec():
    with pytest.raises(InvalidSpec):
        GadgetSpec("spoon")
    with pytest.raises(InvalidSpec):
        GadgetSpec("fork", 0, 2)


def test_pn_example():
    inst = build_pn_instance(complete_graph(2), 0, 1, 1)
    assert inst.params["copies"] == 2 and inst.budget_k == 2
    assert inst.graph.n == 3


@given(graphs(1, 4, connected=True), st.integers(1, 3))
@settings(max_examples=30)
def test_pn_shape(g, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        inst = build_pn_instance(g, 0, k, 0.5)
    a = inst.params["copies"]
    assert a == math.ceil(k * g.n ** 0.5)
    assert inst.graph.n == a * (g.n - 1) + 1
    sub, _ = inst.graph.remove_vertices({0})
    base, _ = g.remove_vertices({0})
    assert len(sub.components()) == a * len(base.components())


def test_annihilation_examples():
    inst = build_annihilation_from_hampath(complete_graph(3))
    assert inst.graph == complete_graph(4) and inst.distribution == (1, 1, 1, 2)
    assert annihilation(inst.graph, inst.distribution).value
    inst = build_annihilation_from_hampath(Graph(3, [(0, 1)]))
    assert not annihilation(inst.graph, inst.distribution).value
    inst = build_annihilation_from_hampath(Graph(1, []))
    assert annihilation(inst.graph, inst.distribution).value
