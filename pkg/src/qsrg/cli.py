"""Command-line entry point: construct, verify, predict, cliques, compare.

Exit status is 0 when every check passes, 1 on a verification mismatch and 2
on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from itertools import combinations
from pathlib import Path

from qsrg.cliques import clique_census, clique_partition_exists, maximal_cliques, maximum_cliques
from qsrg.formulas import induced_degree, predict, srg_params_table3, x_size
from qsrg.graph import Graph, SrgParams, decode_graph6, encode_graph6, point_graph, srg_check
from qsrg.iso import automorphisms, fingerprint, is_isomorphic, reconstruct_point_graph, setwise_stabilizer_order
from qsrg.quadric import Family, Quadric, check_family_n, standard_quadric
from qsrg.gf2geom import span
from qsrg.switching import (
    TYPES,
    build_direct,
    classify_vertices,
    gamma0_involution,
    gm_switch,
    gm_validate,
    switched_graph,
)

log = logging.getLogger("qsrg")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
AUT_MAX_VERTICES = 150


def report_schema() -> dict:
    """JSON schema every report printed by this tool conforms to."""
    return json.loads(resources.files("qsrg").joinpath("report.schema.json").read_text(encoding="utf-8"))


class UsageError(ValueError):
    pass


@dataclass
class Check:
    name: str
    s: int | None
    passed: bool | None  # None when skipped
    expected: object = None
    observed: object = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "s": self.s,
            "pass": self.passed,
            "expected": self.expected,
            "observed": self.observed,
            "detail": self.detail,
        }


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: dict
    passed: bool
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    elapsed_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "timestamp": self.timestamp,
            "elapsed_s": round(self.elapsed_s, 3),
            "results": self.results,
            "pass": self.passed,
        }


# -- verification battery -------------------------------------------------------


def _quadric(family: str, n: int) -> Quadric:
    try:
        fam = Family.parse(family)
        check_family_n(fam, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return standard_quadric(fam, n)


def verify_quadric(family: str, n: int, jobs: int = 1) -> list[Check]:
    """Every exact check available for one quadric and each admissible s."""
    q = _quadric(family, n)
    gamma = point_graph(q)
    fam, r = q.family, q.r
    checks: list[Check] = []
    switched: dict[int, Graph] = {}
    small = q.v <= AUT_MAX_VERTICES
    aut_gamma = automorphisms(gamma) if small else None

    for s in range(q.g):
        log.info("%s%d s=%d: switching", fam.value[0].upper(), n, s)
        part, gs = switched_graph(q, s)
        switched[s] = gs
        want = srg_params_table3(fam, r)
        got = srg_check(gs)
        checks.append(Check("srg_params", s, got == want, list(want.as_tuple()), _srg_json(got)))

        rep = gm_validate(gamma, part)
        exp = {"x_size": x_size(fam, 2, r, s), "induced_degree": induced_degree(fam, 2, r, s)}
        obs = {"x_size": rep.x_size, "induced_degree": rep.induced_degree}
        checks.append(Check("gm_conditions", s, rep.ok and obs == exp, exp, obs, "; ".join(rep.violations[:3])))

        checks.append(Check("direct_equals_switch", s, build_direct(q, part) == gs))

        log.info("s=%d: clique census", s)
        census = clique_census(q, part, gs, jobs=jobs)
        checks.append(Check("clique_census", s, census.match, census.expected, census.to_json(), "; ".join(census.mismatches)))

        iso = is_isomorphic(gamma, gs)
        if s == 0:
            p = part.alpha.basis[0]
            phi = gamma0_involution(q, p)
            g0p = switched_graph_for_point(q, p)
            ok = bool(iso) and gamma.maps_onto(phi, g0p)
            checks.append(Check("gamma0_isomorphic", s, ok, True, bool(iso), iso.reason))
        else:
            checks.append(Check("gamma_s_not_isomorphic", s, not iso, False, bool(iso), iso.reason))

        if small and s > 0:
            kantor = clique_partition_exists(gs)
            checks.append(Check("no_clique_partition", s, kantor.status == "false", "false", kantor.status, kantor.reason))

        if small:
            aut = automorphisms(gs)
            want_orbits = 1 if s == 0 else 3
            types_ok = s == 0 or sorted(aut.orbits) == sorted(part.of_type(t) for t in TYPES)
            # s = 0 gives a graph isomorphic to the point-graph, so the full group
            stab = aut_gamma.order if s == 0 else setwise_stabilizer_order(gamma, part.of_type("I"))
            checks.append(
                Check(
                    "automorphisms",
                    s,
                    aut.status == "ok" and aut.orbit_count == want_orbits and types_ok and aut.order == stab,
                    {"orbit_count": want_orbits, "order": stab},
                    {"orbit_count": aut.orbit_count, "order": aut.order, "orbit_sizes": [len(o) for o in aut.orbits]},
                    aut.reason,
                )
            )
        else:
            checks.append(Check("automorphisms", s, None, detail=f"skipped above {AUT_MAX_VERTICES} vertices"))

        if s > 0:
            # reversed labels: the typing must come from the structure alone
            rec = reconstruct_point_graph(gs.relabel(list(range(gs.v))[::-1]))
            back = is_isomorphic(rec, gamma)
            checks.append(Check("reconstruction", s, bool(back), True, bool(back), back.reason))

    for s1, s2 in combinations(sorted(switched), 2):
        res = is_isomorphic(switched[s1], switched[s2])
        checks.append(Check(f"non_isomorphic_{s1}_{s2}", None, not res, False, bool(res), res.reason))
    if aut_gamma is not None:
        checks.append(Check("aut_point_graph", None, aut_gamma.status == "ok", None, aut_gamma.order))
    return checks


def switched_graph_for_point(q: Quadric, p: int) -> Graph:
    return gm_switch(point_graph(q), classify_vertices(q, span([p])))


def _srg_json(x) -> object:
    return list(x.as_tuple()) if isinstance(x, SrgParams) else {"reason": x.reason, "witness": list(x.witness)}


# -- commands -------------------------------------------------------------------


def cmd_construct(args) -> RunReport:
    q = _quadric(args.family, args.n)
    if args.s is None:
        g = point_graph(q)
    else:
        if not 0 <= args.s < q.g:
            raise UsageError(f"need 0 <= s < g = {q.g}")
        g = switched_graph(q, args.s)[1]
    data = encode_graph6(g)
    if args.out:
        Path(args.out).write_bytes(data + b"\n")
    srg = srg_check(g)
    results = {"v": g.v, "edges": g.n_edges, "srg": _srg_json(srg), "graph6_path": args.out}
    want = srg_params_table3(q.family, q.r)
    return RunReport("construct", _params(args), results, srg == want)


def cmd_verify(args) -> RunReport:
    checks = verify_quadric(args.family, args.n, args.jobs)
    results = {"checks": [c.to_json() for c in checks], "failed": [c.name for c in checks if c.passed is False]}
    return RunReport("verify", _params(args), results, all(c.passed is not False for c in checks))


def cmd_predict(args) -> RunReport:
    try:
        pred = predict(args.family, args.q, args.r, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return RunReport("predict", _params(args), pred.to_json(), True)


def _read_graph(path: str) -> Graph:
    try:
        return decode_graph6(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_cliques(args) -> RunReport:
    g = _read_graph(args.path)
    if args.family is not None:
        if args.n is None or args.s is None:
            raise UsageError("--family needs --n and --s")
        q = _quadric(args.family, args.n)
        part, gs = switched_graph(q, args.s)
        if g not in (gs, point_graph(q)):
            raise UsageError("graph is not the canonical construction for these parameters")
        census = clique_census(q, part, g, jobs=args.jobs, all_maximal=args.all_maximal)
        return RunReport("cliques", _params(args), census.to_json(), census.match)
    cliques = maximum_cliques(g, args.jobs)
    fp = fingerprint(g, cliques)
    results = {"total": len(cliques), "max_size": fp.clique_size, **fp.to_json()}
    if args.all_maximal:
        hist: dict[int, int] = {}
        for c in maximal_cliques(g, args.jobs):
            hist[len(c)] = hist.get(len(c), 0) + 1
        results["maximal_size_histogram"] = dict(sorted(hist.items()))
    return RunReport("cliques", _params(args), results, True)


def cmd_compare(args) -> RunReport:
    g1, g2 = _read_graph(args.path1), _read_graph(args.path2)
    res = is_isomorphic(g1, g2)
    results = {"verdict": "isomorphic" if res else "non-isomorphic", **res.to_json()}
    results.pop("nodes")
    ok = args.expect is None or args.expect == results["verdict"]
    return RunReport("compare", _params(args), results, ok)


def _params(args) -> dict:
    skip = {"func", "log", "verbose", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsrg", description="Switched quadric point-graphs over GF(2).")
    p.add_argument("--log", help="append each report as one JSON line to this file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for clique search")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    fam = dict(choices=["elliptic", "hyperbolic", "parabolic", "e", "h", "p"], required=True)

    c = sub.add_parser("construct", help="write the point-graph or a switched graph in graph6")
    c.add_argument("--family", **fam)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--out", help="graph6 output path")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", help="run every check for one quadric")
    c.add_argument("--family", **fam)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("predict", help="evaluate the closed-form counts")
    c.add_argument("--family", **fam)
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.set_defaults(func=cmd_predict)

    c = sub.add_parser("cliques", help="maximum-clique census of a graph6 file")
    c.add_argument("path")
    c.add_argument("--family", choices=fam["choices"])
    c.add_argument("--n", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--all-maximal", action="store_true", help="also histogram every inclusion-maximal clique")
    c.set_defaults(func=cmd_cliques)

    c = sub.add_parser("compare", help="isomorphism test of two graph6 files")
    c.add_argument("path1")
    c.add_argument("path2")
    c.add_argument("--expect", choices=["isomorphic", "non-isomorphic"])
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"qsrg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.elapsed_s = time.perf_counter() - start
    text = json.dumps(report.to_json(), sort_keys=True)
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    if args.log:
        with open(args.log, "a", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_OK if report.passed else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())