"""Closed-form counts for the switched quadric graphs, in exact integers.

Quantities that only make sense over GF(2) (clique counts, SRG parameters)
are left as None when q != 2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import prod

from qsrg.gf2geom import gaussian_binomial
from qsrg.graph import SrgParams
from qsrg.quadric import Family

MIN_R = {Family.ELLIPTIC: 2, Family.HYPERBOLIC: 1, Family.PARABOLIC: 2}
# first factor index of the generator-count products (2^a+1)(2^{a+1}+1)...
_PRODUCT_START = {Family.ELLIPTIC: 2, Family.HYPERBOLIC: 0, Family.PARABOLIC: 1}


def _div(a: int, b: int) -> int:
    quo, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return quo


def projective_index(family: Family, r: int) -> int:
    return r if family is Family.HYPERBOLIC else r - 1


def ambient_n(family: Family, r: int) -> int:
    return 2 * r if family is Family.PARABOLIC else 2 * r + 1


def r_of(family: Family, n: int) -> int:
    return n // 2


def pm_product(lo: int, hi: int) -> int:
    """(2^lo + 1)(2^(lo+1) + 1)...(2^hi + 1); empty when hi < lo, giving 1."""
    return prod(2**i + 1 for i in range(lo, hi + 1))


def x_size(family: Family, q: int, r: int, s: int) -> int:
    """Number of type II points."""
    if family is Family.ELLIPTIC:
        num = q ** (s + 1) * (q ** (r - s) + 1) * (q ** (r - s - 1) - 1)
    elif family is Family.HYPERBOLIC:
        num = q ** (s + 1) * (q ** (r - s - 1) + 1) * (q ** (r - s) - 1)
    else:
        num = q ** (s + 1) * (q ** (r - s - 1) + 1) * (q ** (r - s - 1) - 1)
    return _div(num, q - 1)


def spaces_through_alpha(family: Family, q: int, r: int, s: int) -> int:
    """Singular (s+1)-spaces containing a fixed singular s-space."""
    return _div(x_size(family, q, r, s), q ** (s + 1))


def f1_count(q: int, s: int) -> int:
    """Lines through a point inside an (s+1)-space."""
    return _div(q ** (s + 1) - 1, q - 1)


def induced_degree(family: Family, q: int, r: int, s: int) -> int:
    """Degree of the subgraph induced on the type II vertices."""
    first = q ** (s + 1) - 1
    if family is Family.ELLIPTIC:
        a, b = r - s - 1, r - s - 2  # (q^a + 1)(q^b - 1)
    elif family is Family.HYPERBOLIC:
        a, b = r - s - 2, r - s - 1
    else:
        a, b = r - s - 2, r - s - 2
    if b == 0:
        # zero factor; for hyperbolic s = g-1 the companion factor has a negative exponent
        return first
    return first + _div(q ** (s + 2) * (q**a + 1) * (q**b - 1), q - 1)


def y_count(family: Family, q: int, r: int, s: int) -> int:
    """Neighbours in X of a type III vertex of the unswitched graph."""
    return q**s * spaces_through_alpha(family, q, r, s)


def elliptic_subspace_count(q: int, r: int, s: int) -> int:
    """Singular s-spaces of the elliptic quadric in PG(2r+1, q), as a product quotient."""
    plus = prod(q**i + 1 for i in range(r - s + 1, r + 2))
    minus = prod(q**i - 1 for i in range(r - s, r + 1))
    return _div(plus * minus, prod(q**i - 1 for i in range(1, s + 2)))


def polar_subspace_count(family: Family, q: int, r: int, d: int) -> int:
    """Singular d-spaces of any non-singular quadric, via rank and type of the polar space."""
    m = projective_index(family, r) + 1
    e = {Family.HYPERBOLIC: 0, Family.PARABOLIC: 1, Family.ELLIPTIC: 2}[family]
    k = d + 1
    return gaussian_binomial(m, k, q) * prod(q ** (m - i + e - 1) + 1 for i in range(k))


def srg_params_table3(family: Family | str, r: int) -> SrgParams:
    family = Family.parse(family)
    if r < MIN_R[family]:
        raise ValueError(f"{family.value} needs r >= {MIN_R[family]}")
    sign = {Family.ELLIPTIC: -1, Family.HYPERBOLIC: 1}.get(family)
    if sign is None:
        p = SrgParams(2 ** (2 * r) - 1, 2 ** (2 * r - 1) - 2, 2 ** (2 * r - 2) - 3, 2 ** (2 * r - 2) - 1)
    else:
        p = SrgParams(
            2 ** (2 * r + 1) + sign * 2**r - 1,
            2 ** (2 * r) + sign * 2**r - 2,
            2 ** (2 * r - 1) + sign * 2**r - 3,
            2 ** (2 * r - 1) + sign * 2 ** (r - 1) - 1,
        )
    assert p.feasible()
    return p


def generator_count(family: Family, r: int) -> int:
    """Maximal cliques of the point-graph."""
    lo = _PRODUCT_START[family]
    hi = r + 1 if family is Family.ELLIPTIC else r
    return pm_product(lo, hi)


def n_class_a(family: Family, r: int, s: int) -> int:
    """Generators through a fixed singular s-space."""
    lo = _PRODUCT_START[family]
    hi = r - s if family is Family.ELLIPTIC else r - s - 1
    return pm_product(lo, hi)


def total_cliques(family: Family, r: int, s: int) -> int:
    if family is Family.ELLIPTIC:
        tail = 2 ** (r + 2) - 2 ** (r - s + 1) + 1
    else:
        tail = 2 ** (r + 1) - 2 ** (r - s) + 1
    return n_class_a(family, r, s) * tail


def cliques_through(family: Family, r: int, s: int) -> dict[str, int]:
    """Maximal cliques through one vertex of each type."""
    g = projective_index(family, r)
    lo = _PRODUCT_START[family]
    if s == g - 1:
        return {
            Family.ELLIPTIC: {"I": 5 * (2 ** (r + 1) - 7), "II": 2 ** (r + 1) - 3, "III": 5},
            Family.HYPERBOLIC: {"I": 2 * (2**r - 1), "II": 2**r, "III": 2},
            Family.PARABOLIC: {"I": 3 * (2**r - 3), "II": 2**r - 1, "III": 3},
        }[family]
    if family is Family.ELLIPTIC:
        return {
            "I": pm_product(lo, r - s) * (2 ** (r + 1) - 2 ** (r - s + 1) + 1),
            "II": pm_product(lo, r - s - 1) * (2 ** (r + 1) - 2 ** (r - s) + 1),
            "III": pm_product(lo, r - s),
        }
    return {
        "I": pm_product(lo, r - s - 1) * (2**r - 2 ** (r - s) + 1),
        "II": pm_product(lo, r - s - 2) * (2**r - 2 ** (r - s - 1) + 1),
        "III": pm_product(lo, r - s - 1),
    }


def type_sizes(family: Family, r: int, s: int) -> dict[str, int]:
    v = srg_params_table3(family, r).v
    one, two = 2 ** (s + 1) - 1, x_size(family, 2, r, s)
    return {"I": one, "II": two, "III": v - one - two}


def clique_composition(g: int, s: int) -> dict[str, dict[str, int]]:
    """Type counts inside Class A and Class B maximal cliques."""
    return {
        "A": {"I": 2 ** (s + 1) - 1, "II": 2 ** (g + 1) - 2 ** (s + 1), "III": 0},
        "B": {"I": 2**s - 1, "II": 2**g - 2**s, "III": 2**g},
    }


@dataclass
class CountPrediction:
    family: str
    q: int
    r: int
    s: int
    g: int
    n: int
    x_size: int
    induced_degree: int
    y: int
    y_stated: bool  # False for H/P, where y is inferred rather than given in closed form
    n_subspaces_s1: int
    f1_count: int
    total_cliques: int | None = None
    total_cliques_gamma: int | None = None
    n_A: int | None = None
    n_B: int | None = None
    per_type_clique_counts: dict[str, int] | None = None
    type_sizes: dict[str, int] | None = None
    max_clique_size: int | None = None
    srg: tuple[int, int, int, int] | None = None
    constructed_graphs: int = field(init=False)
    new_graphs: int = field(init=False)

    def __post_init__(self) -> None:
        self.constructed_graphs = self.g
        self.new_graphs = self.g - 1

    def to_json(self) -> dict:
        return asdict(self)


def check_admissible(family: Family, q: int, r: int, s: int) -> None:
    if q < 2:
        raise ValueError("q must be at least 2")
    if r < MIN_R[family]:
        raise ValueError(f"{family.value} needs r >= {MIN_R[family]}")
    g = projective_index(family, r)
    if not 0 <= s < g:
        raise ValueError(f"need 0 <= s < g = {g}, got s = {s}")


def predict(family: Family | str, q: int, r: int, s: int) -> CountPrediction:
    family = Family.parse(family)
    check_admissible(family, q, r, s)
    g = projective_index(family, r)
    pred = CountPrediction(
        family=family.value,
        q=q,
        r=r,
        s=s,
        g=g,
        n=ambient_n(family, r),
        x_size=x_size(family, q, r, s),
        induced_degree=induced_degree(family, q, r, s),
        y=y_count(family, q, r, s),
        y_stated=family is Family.ELLIPTIC,
        n_subspaces_s1=spaces_through_alpha(family, q, r, s),
        f1_count=f1_count(q, s),
    )
    if q == 2:
        pred.total_cliques = total_cliques(family, r, s)
        pred.total_cliques_gamma = generator_count(family, r)
        pred.n_A = n_class_a(family, r, s)
        pred.n_B = pred.total_cliques - pred.n_A
        pred.per_type_clique_counts = cliques_through(family, r, s)
        pred.type_sizes = type_sizes(family, r, s)
        pred.max_clique_size = 2 ** (g + 1) - 1
        pred.srg = srg_params_table3(family, r).as_tuple()
    return pred
