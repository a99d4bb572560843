"""Automorphism group orders of the point-graphs and their switched graphs.

For each switched graph the order is compared with the number of singular
s-spaces, since the switched group should be the stabilizer of one of them.

    python scripts/automorphism_orders.py --max-n 7
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from qsrg.formulas import polar_subspace_count
from qsrg.graph import point_graph
from qsrg.iso import automorphisms
from qsrg.quadric import Family, MIN_N, standard_quadric
from qsrg.switching import switched_graph


@dataclass
class AutConfig:
    max_n: int = 7
    budget: int | None = None


@dataclass
class AutRow:
    family: str
    n: int
    s: int | None
    order: int | None
    orbit_sizes: list[int]
    index_check: bool | None


def run(cfg: AutConfig) -> list[AutRow]:
    rows = []
    for n in range(3, cfg.max_n + 1):
        for fam in Family:
            if (fam is Family.PARABOLIC) != (n % 2 == 0) or n < MIN_N[fam]:
                continue
            q = standard_quadric(fam, n)
            full = automorphisms(point_graph(q), budget=cfg.budget)
            rows.append(AutRow(fam.value, n, None, full.order, sorted(len(o) for o in full.orbits), None))
            for s in range(1, q.g):
                rep = automorphisms(switched_graph(q, s)[1], budget=cfg.budget)
                ok = None
                if rep.order and full.order:
                    ok = rep.order * polar_subspace_count(fam, 2, q.r, s) == full.order
                rows.append(AutRow(fam.value, n, s, rep.order, sorted(len(o) for o in rep.orbits), ok))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=AutConfig.max_n)
    p.add_argument("--budget", type=int)
    cfg = AutConfig(**vars(p.parse_args()))
    for row in run(cfg):
        print(json.dumps(asdict(row)))


if __name__ == "__main__":
    main()
