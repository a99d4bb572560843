import numpy as np
import pytest

from conftest import CASES, gamma, quadric, switched
from qsrg.formulas import srg_params_table3
from qsrg.gf2geom import span
from qsrg.graph import Graph, iter_bits, srg_check
from qsrg.quadric import first_singular_subspace
from qsrg.switching import (
    SwitchingError,
    TypedPartition,
    build_direct,
    classify_vertices,
    gamma0_involution,
    gm_switch,
    gm_validate,
)


def spectrum(g: Graph) -> np.ndarray:
    a = np.zeros((g.v, g.v))
    for i, j in g.edges():
        a[i, j] = a[j, i] = 1
    return np.round(np.linalg.eigvalsh(a), 6)


def brute_types(q, alpha):
    """Types straight from the definition: singular span with alpha or not."""
    out = []
    for p in q.points:
        if p in alpha:
            out.append("I")
        elif q.is_singular(span(alpha.basis + (p,))):
            out.append("II")
        else:
            out.append("III")
    return out


@pytest.mark.parametrize("family,n,s,sizes", [("h", 5, 0, (1, 18, 16)), ("e", 7, 1, (3, 20, 96)), ("p", 6, 1, (3, 12, 48))])
def test_type_sizes(family, n, s, sizes):
    part, _ = switched(family, n, s)
    assert tuple(part.sizes().values()) == sizes


@pytest.mark.parametrize("family,n,s", CASES)
def test_classification_matches_definition(family, n, s):
    q = quadric(family, n)
    part, _ = switched(family, n, s)
    assert list(part.type_of) == brute_types(q, part.alpha)


@pytest.mark.parametrize("family,n,s,degree", [("h", 5, 0, 9), ("e", 7, 1, 3), ("h", 7, 2, 7), ("p", 6, 1, 3)])
def test_induced_degree(family, n, s, degree):
    rep = gm_validate(gamma(family, n), switched(family, n, s)[0])
    assert rep.ok and rep.induced_degree == degree


def test_type_three_hits_half_of_x():
    rep = gm_validate(gamma("e", 7), switched("e", 7, 1)[0])
    assert rep.hits == {"I": (20,), "III": (10,)}


@pytest.mark.parametrize("family,n,s", CASES)
def test_switch_keeps_parameters_and_spectrum(family, n, s):
    g = gamma(family, n)
    part, gs = switched(family, n, s)
    assert srg_check(gs) == srg_params_table3(quadric(family, n).family, n // 2)
    assert np.array_equal(spectrum(g), spectrum(gs))


@pytest.mark.parametrize("family,n,s", CASES)
def test_direct_construction_equals_switch(family, n, s):
    part, gs = switched(family, n, s)
    assert build_direct(quadric(family, n), part) == gs


@pytest.mark.parametrize("family,n,s", CASES)
def test_switch_is_an_involution(family, n, s):
    part, gs = switched(family, n, s)
    assert gm_switch(gs, part) == gamma(family, n)


@pytest.mark.parametrize("family,n,s", CASES)
def test_neighbourhoods_across_the_switch(family, n, s):
    g = gamma(family, n)
    part, gs = switched(family, n, s)
    xm = part.x_mask
    for i in part.of_type("I"):
        assert gs.adj[i] & xm == g.adj[i] & xm == xm
    for i in part.of_type("III"):
        assert gs.adj[i] & xm == ~g.adj[i] & xm
    for i in part.of_type("II"):
        assert gs.adj[i] & xm == g.adj[i] & xm


def test_type_one_and_two_always_adjacent():
    part, gs = switched("h", 7, 1)
    for i in part.of_type("I"):
        assert all(gs.has_edge(i, j) for j in part.of_type("II"))


def test_invalid_partition_is_refused():
    g = gamma("h", 5)
    part, _ = switched("h", 5, 1)
    bad = TypedPartition.from_types(None, ["II"] * 3 + ["I"] * (g.v - 3))
    rep = gm_validate(g, bad)
    assert not rep.ok and rep.violations
    with pytest.raises(SwitchingError):
        gm_switch(g, bad)


def test_classify_rejects_bad_alpha():
    q = quadric("h", 5)
    with pytest.raises(ValueError):
        classify_vertices(q, first_singular_subspace(q, 2))
    off = next(x for x in range(1, 64) if x not in q)
    with pytest.raises(ValueError):
        classify_vertices(q, span([off]))


@pytest.mark.parametrize("family,n", [("h", 3), ("p", 4), ("e", 5), ("h", 5), ("p", 6), ("e", 7), ("h", 7)])
def test_gamma0_map(family, n):
    q = quadric(family, n)
    for p in q.points[:3]:
        perm = gamma0_involution(q, p)
        g0 = gm_switch(gamma(family, n), classify_vertices(q, span([p])))
        assert all(perm[perm[i]] == i for i in range(q.v))
        assert gamma(family, n).maps_onto(perm, g0)


def test_x_and_y_sets():
    part, _ = switched("e", 7, 1)
    assert len(part.x_set) == 20 and len(part.y_set) == 99
    assert part.x_set.isdisjoint(part.y_set)
    assert set(iter_bits(part.y_mask)) == part.y_set
