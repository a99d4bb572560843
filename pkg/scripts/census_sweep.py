"""Sweep every quadric up to a dimension bound: parameters, switching checks and clique census.

Writes one JSON line per (family, n, s) and prints a compact table.

    python scripts/census_sweep.py --max-n 9 --out sweep.jsonl
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from qsrg.cliques import clique_census
from qsrg.formulas import srg_params_table3
from qsrg.graph import point_graph, srg_check
from qsrg.quadric import Family, MIN_N, standard_quadric
from qsrg.switching import build_direct, gm_validate, switched_graph


@dataclass
class SweepConfig:
    max_n: int = 7
    jobs: int = 1
    out: str | None = None


@dataclass
class SweepRow:
    family: str
    n: int
    s: int
    v: int
    srg: tuple[int, ...]
    srg_ok: bool
    switching_ok: bool
    direct_ok: bool
    cliques: int
    census_ok: bool
    seconds: float


def quadrics(max_n: int):
    for n in range(3, max_n + 1):
        for fam in Family:
            if (fam is Family.PARABOLIC) == (n % 2 == 0) and n >= MIN_N[fam]:
                yield fam, n


def sweep(cfg: SweepConfig) -> list[SweepRow]:
    rows = []
    for fam, n in quadrics(cfg.max_n):
        q = standard_quadric(fam, n)
        gamma = point_graph(q)
        for s in range(q.g):
            start = time.perf_counter()
            part, gs = switched_graph(q, s)
            srg = srg_check(gs)
            census = clique_census(q, part, gs, jobs=cfg.jobs)
            rows.append(
                SweepRow(
                    family=fam.value,
                    n=n,
                    s=s,
                    v=gs.v,
                    srg=srg.as_tuple(),
                    srg_ok=srg == srg_params_table3(fam, q.r),
                    switching_ok=gm_validate(gamma, part).ok,
                    direct_ok=build_direct(q, part) == gs,
                    cliques=census.total,
                    census_ok=census.match,
                    seconds=round(time.perf_counter() - start, 3),
                )
            )
            print(_fmt(rows[-1]), flush=True)
    return rows


def _fmt(row: SweepRow) -> str:
    flags = "ok" if row.srg_ok and row.switching_ok and row.direct_ok and row.census_ok else "MISMATCH"
    return f"{row.family:10s} n={row.n} s={row.s} v={row.v:4d} srg={row.srg} cliques={row.cliques:6d} {flags} {row.seconds:.2f}s"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    p.add_argument("--jobs", type=int, default=SweepConfig.jobs)
    p.add_argument("--out")
    cfg = SweepConfig(**vars(p.parse_args()))
    rows = sweep(cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(asdict(row)) + "\n")


if __name__ == "__main__":
    main()
