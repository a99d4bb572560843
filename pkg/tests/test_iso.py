import random
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gamma, quadric, switched
from oracles import perm_group, to_nx
from qsrg.formulas import polar_subspace_count
from qsrg.graph import Graph
from qsrg.iso import (
    NotRecognizable,
    automorphisms,
    fingerprint,
    is_isomorphic,
    reconstruct_point_graph,
    recover_types,
    setwise_stabilizer_order,
)
from qsrg.switching import TYPES, gm_switch

# orders of the full groups, derived from the found generators by sympy
POINT_GRAPH_AUT = {("h", 3): 72, ("p", 4): 720, ("e", 5): 51840, ("h", 5): 40320, ("p", 6): 1451520,
                   ("e", 7): 394813440, ("h", 7): 348364800}


def shuffled(g: Graph, seed: int) -> tuple[Graph, list[int]]:
    perm = list(range(g.v))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm), perm


def test_fingerprint_gamma_vs_gamma1_h5():
    assert fingerprint(gamma("h", 5)).n_cliques == 30
    assert fingerprint(switched("h", 5, 1)[1]).n_cliques == 14


def test_fingerprint_e7_per_vertex_histogram():
    fp = fingerprint(switched("e", 7, 1)[1])
    assert dict(fp.cliques_per_vertex_histogram) == {45: 3, 13: 20, 5: 96}


def test_fingerprint_maximal_histogram_is_opt_in():
    g = switched("h", 5, 1)[1]
    assert fingerprint(g).clique_size_histogram is None
    assert dict(fingerprint(g, maximal_histogram=True).clique_size_histogram) == {4: 64, 5: 48, 6: 16, 7: 14}


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([("h", 5, 1), ("p", 6, 1), ("e", 7, 1), ("h", 7, 0)]), st.integers(0, 2**32))
def test_fingerprint_invariant_under_relabelling(case, seed):
    g = switched(*case)[1]
    assert fingerprint(g, maximal_histogram=True) == fingerprint(shuffled(g, seed)[0], maximal_histogram=True)


@pytest.mark.parametrize("family,n", [("h", 3), ("p", 4), ("e", 5), ("h", 5), ("p", 6), ("e", 7), ("h", 7)])
def test_gamma0_isomorphic_with_verified_bijection(family, n):
    g0, perm = shuffled(switched(family, n, 0)[1], 7)
    res = is_isomorphic(gamma(family, n), g0)
    assert res.isomorphic and gamma(family, n).maps_onto(res.mapping, g0)


@pytest.mark.parametrize("family,n,s", [("h", 5, 1), ("p", 6, 1), ("e", 7, 1), ("h", 7, 1), ("h", 7, 2)])
def test_switched_not_isomorphic_to_point_graph(family, n, s):
    res = is_isomorphic(gamma(family, n), switched(family, n, s)[1])
    assert not res and res.mapping is None


def test_h7_switched_graphs_pairwise_distinct():
    gs = [switched("h", 7, s)[1] for s in range(3)]
    counts = [fingerprint(g).n_cliques for g in gs]
    assert len(set(counts)) == 3
    for a, b in combinations(gs, 2):
        assert not is_isomorphic(a, b)


def test_search_without_clique_screen():
    # no fingerprint shortcut: the refinement search alone must decide
    a = switched("h", 5, 1)[1]
    b, _ = shuffled(a, 3)
    res = is_isomorphic(a, b, use_cliques=False)
    assert res and a.maps_onto(res.mapping, b)
    assert not is_isomorphic(gamma("h", 5), a, use_cliques=False)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 11), st.floats(0.2, 0.8), st.integers(0, 2**32))
def test_agrees_with_networkx_on_random_graphs(v, p, seed):
    g1 = nx.gnp_random_graph(v, p, seed=seed)
    g2 = nx.gnp_random_graph(v, p, seed=seed + 1) if seed % 2 else nx.relabel_nodes(g1, dict(enumerate(random.Random(seed).sample(range(v), v))))
    a = Graph.from_edges(v, g1.edges())
    b = Graph.from_edges(v, g2.edges())
    res = is_isomorphic(a, b)
    assert bool(res) == nx.is_isomorphic(g1, g2)
    if res:
        assert a.maps_onto(res.mapping, b)


def test_rook_graph_order_by_brute_force():
    g = gamma("h", 3)
    brute = sum(1 for p in permutations(range(9)) if g.is_automorphism(p))
    rep = automorphisms(g)
    assert brute == rep.order == 72 and rep.orbit_count == 1


@pytest.mark.parametrize("family,n", list(POINT_GRAPH_AUT))
def test_point_graph_groups(family, n):
    g = gamma(family, n)
    rep = automorphisms(g)
    assert rep.status == "ok" and rep.order == POINT_GRAPH_AUT[(family, n)]
    assert all(g.is_automorphism(p) for p in rep.generators)
    assert rep.orbit_count == 1


@pytest.mark.parametrize("family,n", list(POINT_GRAPH_AUT))
def test_orders_agree_with_sympy(family, n):
    rep = automorphisms(gamma(family, n))
    grp = perm_group(rep.generators, gamma(family, n).v)
    assert grp.order() == rep.order


@pytest.mark.parametrize("family,n,s", [("h", 5, 1), ("p", 6, 1), ("e", 7, 1), ("h", 7, 1), ("h", 7, 2)])
def test_switched_group_is_alpha_stabilizer(family, n, s):
    part, gs = switched(family, n, s)
    rep = automorphisms(gs)
    assert sorted(rep.orbits) == sorted(part.of_type(t) for t in TYPES)
    # the group acts transitively on singular s-spaces, so the stabilizer has index equal to their number
    count = polar_subspace_count(quadric(family, n).family, 2, n // 2, s)
    assert rep.order * count == POINT_GRAPH_AUT[(family, n)]
    assert setwise_stabilizer_order(gamma(family, n), part.of_type("I")) == rep.order


def test_setwise_stabilizer_against_group_filter():
    g = gamma("h", 5)
    part, _ = switched("h", 5, 1)
    grp = perm_group(automorphisms(g).generators, g.v)
    target = set(part.of_type("I"))
    filtered = sum(1 for el in grp.generate() if {el(i) for i in target} == target)
    assert filtered == setwise_stabilizer_order(g, target) == 384


def test_setwise_stabilizer_of_everything_is_whole_group():
    g = gamma("p", 6)
    assert setwise_stabilizer_order(g, range(g.v)) == automorphisms(g).order


def test_automorphism_budget_and_size_bound():
    assert automorphisms(gamma("h", 7), budget=5).status == "aborted"
    rep = automorphisms(gamma("h", 5), max_vertices=10)
    assert rep.status == "aborted" and rep.order is None


@pytest.mark.parametrize("family,n,s", [("h", 5, 1), ("p", 6, 1), ("e", 7, 1), ("h", 7, 1), ("h", 7, 2)])
def test_reconstruction(family, n, s):
    part, gs = switched(family, n, s)
    unlabelled, perm = shuffled(gs, 11)
    rec = reconstruct_point_graph(unlabelled)
    assert is_isomorphic(rec, gamma(family, n))
    types = recover_types(unlabelled)
    assert [types.type_of[perm[i]] for i in range(gs.v)] == list(part.type_of)
    # switching back with the recovered typing returns the input
    assert gm_switch(rec, types) == unlabelled


@pytest.mark.parametrize("family,n", [("h", 5), ("h", 3)])
def test_reconstruction_refuses_vertex_transitive_input(family, n):
    with pytest.raises(NotRecognizable, match="not a recognizable"):
        reconstruct_point_graph(gamma(family, n))
