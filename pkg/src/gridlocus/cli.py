"""``gridlocus`` command line: construct, verify, appendix, bounds.

Exit codes: 0 success, 1 violations (or an unmet audit hypothesis),
2 invalid parameters, 3 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import appendix, bounds, drg, graphio, locgrid, mu
from .errors import (CapacityError, CertificateError, DomainError, HypothesisUnmetError,
                     InvalidParameterError, NotDistanceRegularError, NotLocallyGridError, ParseError)
from .field import context_for_n
from .graph import Graph
from .reference import CORPUS_NAMES, corpus_graph
from .symplectic import build_gamma

EXIT_OK, EXIT_VIOLATION, EXIT_PARAM, EXIT_IO = 0, 1, 2, 3
SUITES = ("grid", "census", "mu", "drg", "parity", "5x5")


def _emit(doc, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False, default=str)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- construct ---------------------------------------------------------------------

def cmd_construct(args) -> int:
    g = build_gamma(context_for_n(args.n))
    summary = {"n": args.n, "vertices": g.n_vertices, "degree": g.degree(0), "diameter": g.diameter()}
    if args.out:
        graphio.write_graph(g, args.out, args.format)
        summary["written"] = str(args.out)
        _emit(summary)
    else:
        text = graphio.to_graph6(g) if args.format != "json" else json.dumps(graphio.to_json_dict(g))
        print(text)
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------------------

def _load(args) -> tuple[Graph, dict, object]:
    if args.gamma is not None:
        ctx = context_for_n(args.gamma)
        return build_gamma(ctx), {"source": f"gamma({args.gamma})"}, ctx
    if args.corpus is not None:
        return corpus_graph(args.corpus), {"source": args.corpus}, None
    if args.path is None:
        raise InvalidParameterError("give a graph file, --gamma N or --corpus NAME")
    return graphio.read_graph(args.path), {"source": str(args.path)}, None


def _suite_grid(g, ctx, jobs):
    out = {}
    try:
        m, n = locgrid.detect_locally_grid(g)
    except (NotLocallyGridError, DomainError) as exc:
        witness = getattr(exc, "vertex", None)
        return {"locally_grid": {"audit": "locally_grid", "ok": False, "violations": [
            {"check": "locally-grid", "ref": "every neighbourhood is a rook grid",
             "witness": [] if witness is None else [witness], "detail": str(exc)}]}}
    out["locally_grid"] = {"audit": "locally_grid", "ok": True, "violations": [], "shape": [m, n]}
    if m != n:
        return out
    census = locgrid.structural_census(g)
    out["structural_census"] = census.report.to_dict()
    out["clique_distance"] = locgrid.clique_distance_audit(g).to_dict()
    out["parameter_bounds"] = locgrid.parameter_bounds_audit(g).to_dict()
    if n >= 3:
        out["mu_clique_matching"] = locgrid.mu_clique_matching_audit(g).to_dict()
    return out


def _suite_census(g, ctx, jobs):
    census = mu.mu_census(g, jobs=jobs)
    doc = census.report.to_dict()
    doc["census"] = census.to_json()
    doc["per_vertex_uniform"] = census.per_vertex_uniform
    return {"mu_census": doc}


def _suite_mu(g, ctx, jobs):
    out = {"k2_identities": mu.k2_identities_audit(g).to_dict()}
    if ctx is not None:
        ok = mu.divisor_profile_check(g, ctx, mu.mu_census(g, jobs=jobs))
        out["divisor_profile"] = {"audit": "divisor_profile", "ok": ok, "violations": [] if ok else [
            {"check": "divisor-law", "ref": "mu-graphs are d equal cycles for each odd d dividing n-1",
             "witness": [], "detail": ""}]}
    return out


def _suite_drg(g, ctx, jobs):
    doc: dict = {"audit": "drg", "violations": []}
    try:
        arr = drg.intersection_numbers(g)
    except NotDistanceRegularError as exc:
        doc["violations"].append({"check": "distance-regular", "ref": "intersection numbers depend only on distance",
                                  "witness": list(exc.witness), "detail": str(exc)})
        doc["ok"] = False
        return {"drg": doc}
    doc["intersection_array"] = arr.to_dict()
    part = drg.antipodal_partition(g)
    if part is not None:
        quotient = drg.quotient_graph(g, part)
        doc["antipodal"] = {"blocks": len(part), "block_size": len(part[0]),
                            "quotient_vertices": quotient.n_vertices,
                            "quotient_complete": quotient.n_edges == quotient.n_vertices * (quotient.n_vertices - 1) // 2}
    if arr.diameter == 2:
        params = drg.srg_check(g)
        doc["srg"] = list(params.as_tuple())
        feasible = drg.srg_feasibility(params)
        doc["srg_feasible"] = feasible
        if not feasible:
            doc["violations"].append({"check": "srg-feasibility", "ref": "eigenvalue multiplicities are integers",
                                      "witness": list(params.as_tuple()), "detail": ""})
    doc["ok"] = not doc["violations"]
    return {"drg": doc}


def _suite_parity(g, ctx, jobs):
    return {"parity": locgrid.parity_audit(g).to_dict()}


def _suite_5x5(g, ctx, jobs):
    return {"five_by_five": locgrid.five_by_five_audit(g).to_dict()}


_SUITE_FUNCS = {"grid": _suite_grid, "census": _suite_census, "mu": _suite_mu, "drg": _suite_drg,
                "parity": _suite_parity, "5x5": _suite_5x5}


def _applies(g: Graph, suite: str) -> bool:
    """Whether ``suite`` fits the graph's local shape; used to trim ``--suite all``."""
    if suite in ("grid", "drg"):
        return True
    try:
        m, n = locgrid.detect_locally_grid(g)
    except (NotLocallyGridError, DomainError):
        return False
    if suite == "5x5":
        return (m, n) == (5, 5)
    return m == n


def cmd_verify(args) -> int:
    g, source, ctx = _load(args)
    source["vertices"] = g.n_vertices
    suites = SUITES if args.suite == "all" else (args.suite,)
    doc: dict = {"graph": source, "suites": {}, "hypothesis_unmet": [], "skipped": []}
    for suite in suites:
        if args.suite == "all" and not _applies(g, suite):
            doc["skipped"].append(suite)
            continue
        try:
            doc["suites"].update(_SUITE_FUNCS[suite](g, ctx, args.jobs))
        except HypothesisUnmetError as exc:
            doc["hypothesis_unmet"].append({"suite": suite, "note": f"hypothesis unmet: {exc}",
                                            "witness": list(exc.witness or ())})
        except (NotLocallyGridError, DomainError) as exc:
            doc["suites"][suite] = {"audit": suite, "ok": False, "violations": [
                {"check": "precondition", "ref": "graph shape required by the suite",
                 "witness": [], "detail": str(exc)}]}
    doc["ok"] = all(rep.get("ok", True) for rep in doc["suites"].values()) and not doc["hypothesis_unmet"]
    _emit(doc, args.out)
    return EXIT_OK if doc["ok"] else EXIT_VIOLATION


# -- appendix ---------------------------------------------------------------------------

def _parse_seed(text: str | None, host: int):
    if text is None:
        return ("cyc8", "cyc44") if host == 5 else ("cycle",), None
    if text in ("cyc8", "cyc44", "cycle"):
        return (text,), None
    if text.startswith("random:"):
        try:
            count = int(text.split(":", 1)[1])
        except ValueError:
            raise InvalidParameterError(f"bad seed spec {text!r}; use random:K") from None
        if count < 1:
            raise InvalidParameterError("random:K needs K >= 1")
        return None, count
    raise InvalidParameterError(f"unknown seed {text!r}; use cyc8, cyc44, cycle or random:K")


def cmd_appendix(args) -> int:
    seeds, random_count = _parse_seed(args.seed, args.host)
    if random_count is not None:
        pool = appendix.enumerate_candidates(args.host, "all")
        rng = random.Random(args.rng_seed)
        seeds = tuple(c.cells for c in rng.sample(pool, min(random_count, len(pool))))
    expect_empty = not args.expect_nonempty
    try:
        cert = appendix.lemma_no_6clique_certificate(
            n=args.host, target_size=args.target, alternates=args.alternates, rng_seed=args.rng_seed,
            jobs=args.jobs, direct_scan=not args.no_direct_scan, seeds=seeds, expect_empty=expect_empty,
            enumeration_samples=args.samples)
    except CertificateError as exc:
        cert = exc.certificate
    _emit(cert, args.out)
    return EXIT_OK if cert["ok"] else EXIT_VIOLATION


# -- bounds -------------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    report = bounds.theorem_bounds(args.n, args.regime)
    _emit(report.to_dict())
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for censuses and searches")
    common.add_argument("--rng-seed", type=int, default=0, help="seed for every random choice")

    parser = argparse.ArgumentParser(prog="gridlocus", description="Locally grid graphs from symplectic cosets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build Gamma^(n) and write it out")
    p.add_argument("n", type=int)
    p.add_argument("--out", "-o")
    p.add_argument("--format", choices=("graph6", "json"), default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="run audits on a graph")
    p.add_argument("path", nargs="?")
    p.add_argument("--gamma", type=int, metavar="N", help="build Gamma^(N) instead of reading a file")
    p.add_argument("--corpus", choices=CORPUS_NAMES, help="use a named comparison graph")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--out", "-o", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("appendix", parents=[common], help="search for compatible mu-graph families")
    p.add_argument("--host", type=int, default=5, help="side of the rook-grid host")
    p.add_argument("--seed", help="cyc8, cyc44, cycle or random:K (default: both canonical seeds)")
    p.add_argument("--target", type=int, default=None, help="family size to rule out (default host+1)")
    p.add_argument("--expect-nonempty", action="store_true", help="succeed when the target level is nonempty")
    p.add_argument("--alternates", type=int, default=10, help="extra random seeds per seed kind")
    p.add_argument("--samples", type=int, default=100_000, help="random subsets for the enumeration audit")
    p.add_argument("--no-direct-scan", action="store_true", help="skip the clique scan over Gamma^(5)")
    p.add_argument("--out", "-o", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("bounds", parents=[common], help="order and diameter bounds")
    p.add_argument("n", type=int)
    p.add_argument("regime", help="n-1, >=2(n-1) or 2(n-1)")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("gridlocus: --jobs must be >= 1", file=sys.stderr)
        return EXIT_PARAM
    try:
        return args.func(args)
    except (InvalidParameterError, CapacityError) as exc:
        print(f"gridlocus: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (ParseError, OSError) as exc:
        print(f"gridlocus: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
