"""Command-line interface, instance file format and JSON reports.

Instance files look like::

    gammaring v1
    # free comment
    M: 2 2
    G: 2
    T 0 0 1 : 1 0

Each ``T i j k`` line gives the coordinates of e_i f_j e_k; omitted
entries are zero.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .abelian import FinAbGroup, make_group
from .errors import CapExceeded, GammaError, NotWellDefined, ParseError
from .gammaring import GammaRing, build_gamma_ring, validate_associativity
from .instances import (RECIPE_SPACES, builtin_instances, direct_product, dual_instance,
                        paper_example_analog, random_instance, rect_matrix_instance,
                        ring_as_gamma_ring, trivial_instance, z2_instance, zn_ring)
from .maps import MapRole, enumerate_maps, is_scp
from .report import BUDGET_EXHAUSTED, VerdictReport, jsonable
from .structure import center, is_commutative, is_prime, is_semiprime
from .theorems import (TARGETS, SearchConfig, TheoremId, VerifyOptions, search_counterexample,
                       verify, verify_all)

HEADER = "gammaring v1"

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


# -- instance files ----------------------------------------------------------------

def emit_instance(gr: GammaRing, comments: Sequence[str] = ()) -> str:
    """Canonical text: header, comments, group lines, nonzero entries in (i, j, k) order."""
    lines = [HEADER]
    lines += [f"# {c}" for c in comments]
    lines.append("M: " + " ".join(map(str, gr.m_group.moduli)))
    lines.append("G: " + " ".join(map(str, gr.g_group.moduli)))
    for i, row in enumerate(gr.tensor):
        for j, col in enumerate(row):
            for k, v in enumerate(col):
                if any(v):
                    lines.append(f"T {i} {j} {k} : " + " ".join(map(str, v)))
    return "\n".join(lines) + "\n"


def instance_hash(gr: GammaRing) -> str:
    return hashlib.sha256(emit_instance(gr).encode()).hexdigest()


def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"non-integer in {what}") from None


def _group(tokens: list[str], lineno: int, what: str) -> FinAbGroup:
    try:
        return make_group(_ints(tokens, lineno, what))
    except GammaError as exc:
        raise ParseError(lineno, str(exc)) from None


def parse_instance_file(text: str, *, skip_assoc: bool = False, name: str = "") -> GammaRing:
    """Build a GammaRing from instance-file text.

    Raises ParseError for grammar problems and for entries that are not
    well defined (with the offending line); associativity is checked
    unless ``skip_assoc``, failures raising NotValidated from the caller's
    side via ``validate_associativity``.
    """
    M = G = None
    entries: dict[tuple[int, int, int], tuple[int, list[int]]] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(lineno, f"expected header {HEADER!r}")
            seen_header = True
            continue
        if line.startswith("M:"):
            if M is not None:
                raise ParseError(lineno, "duplicate M line")
            M = _group(line[2:].split(), lineno, "M")
        elif line.startswith("G:"):
            if G is not None:
                raise ParseError(lineno, "duplicate G line")
            G = _group(line[2:].split(), lineno, "G")
        elif line.startswith("T"):
            if M is None or G is None:
                raise ParseError(lineno, "T line before M and G lines")
            head, sep, tail = line[1:].partition(":")
            if not sep:
                raise ParseError(lineno, "T line needs ':'")
            idx = _ints(head.split(), lineno, "indices")
            if len(idx) != 3:
                raise ParseError(lineno, "T line needs three indices")
            i, j, k = idx
            if not (0 <= i < M.rank and 0 <= j < G.rank and 0 <= k < M.rank):
                raise ParseError(lineno, f"index ({i}, {j}, {k}) out of range")
            coords = _ints(tail.split(), lineno, "coordinates")
            if len(coords) != M.rank:
                raise ParseError(lineno, f"expected {M.rank} coordinates, got {len(coords)}")
            if (i, j, k) in entries:
                raise ParseError(lineno, f"duplicate entry ({i}, {j}, {k})")
            entries[(i, j, k)] = (lineno, [c % d for c, d in zip(coords, M.moduli)])
        else:
            raise ParseError(lineno, f"unrecognized line {raw.strip()!r}")
    if not seen_header:
        raise ParseError(1, "empty file")
    if M is None or G is None:
        raise ParseError(len(text.splitlines()), "missing M or G line")
    tensor = [[[[0] * M.rank for _ in range(M.rank)] for _ in range(G.rank)]
              for _ in range(M.rank)]
    for (i, j, k), (_, v) in entries.items():
        tensor[i][j][k] = v
    try:
        gr = build_gamma_ring(M, G, tensor, name=name)
    except NotWellDefined as exc:
        lineno = entries[exc.index][0] if exc.index in entries else 0
        raise ParseError(lineno, str(exc)) from exc
    if not skip_assoc:
        validate_associativity(gr)
    return gr


# -- recipes -----------------------------------------------------------------------

RECIPES = {
    "z2": "Z2 as a Gamma-ring over itself",
    "dual": "dual numbers Z2[t]/(t^2) with Gamma = Z2",
    "trivial": "the zero Gamma-ring",
    "rect": "rect M N Q: MxN matrices over Z_Q with Gamma = NxM matrices",
    "zn": "zn N: the ring Z_N over itself",
    "m2f2_x_f4": "M2(F2) x F4 with Gamma = M2(F2) x F2",
    "product": "product A B: direct product of two built-in instances",
    "random": "random SEED [SPACE]: seeded random instance",
}


def build_recipe(recipe: str, params: Sequence[str]) -> tuple[GammaRing, list[str]]:
    """Instance for a recipe name; also returns header comments describing it."""
    comments = ["recipe: " + " ".join([recipe, *params])]
    p = list(params)

    def need(n):
        if len(p) != n:
            raise ParseError(0, f"recipe {recipe!r} takes {n} parameter(s)")

    try:
        if recipe == "z2":
            need(0)
            return z2_instance(), comments
        if recipe == "dual":
            need(0)
            return dual_instance(), comments
        if recipe == "trivial":
            need(0)
            return trivial_instance(), comments
        if recipe == "rect":
            need(3)
            return rect_matrix_instance(*map(int, p)), comments
        if recipe == "zn":
            need(1)
            return ring_as_gamma_ring(zn_ring(int(p[0])), name=f"Z{p[0]}"), comments
        if recipe == "m2f2_x_f4":
            need(0)
            gr, sigma = paper_example_analog()
            return gr, comments + [f"sigma: {list(sigma.images)}"]
        if recipe == "product":
            need(2)
            table = builtin_instances()
            for n in p:
                if n not in table:
                    raise ParseError(0, f"unknown built-in {n!r}; choose from {sorted(table)}")
            return direct_product(table[p[0]], table[p[1]]), comments
        if recipe == "random":
            if len(p) not in (1, 2):
                raise ParseError(0, "recipe 'random' takes SEED [SPACE]")
            space = p[1] if len(p) == 2 else "all"
            if space not in RECIPE_SPACES:
                raise ParseError(0, f"unknown recipe space {space!r}")
            gr = random_instance(int(p[0]), space)
            return gr, comments + [f"label: {gr.label()}"]
    except ValueError as exc:
        if isinstance(exc, GammaError):
            raise
        raise ParseError(0, f"bad parameter: {exc}") from None
    raise ParseError(0, f"unknown recipe {recipe!r}; choose from {sorted(RECIPES)}")


# -- reports -----------------------------------------------------------------------

def report_document(command: str, report: VerdictReport, *, instance: GammaRing | None,
                    options: dict, seed: int | None, elapsed: float | None) -> dict:
    doc = report.to_dict()
    doc.update({
        "tool_version": __version__,
        "command": command,
        "options": jsonable(options),
        "instance": None if instance is None else {"name": instance.label(),
                                                   "hash": instance_hash(instance)},
        "seed": seed,
        "elapsed": None if elapsed is None else round(elapsed, 6),
    })
    return doc


def dump_report(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _summary(command: str, report: VerdictReport) -> str:
    lines = [f"{command}: verdict={str(report.verdict).lower()} status={report.status}"]
    for k, v in report.hypothesis_notes.items():
        lines.append(f"  hypothesis {k}: {v}")
    for k, v in report.counters.items():
        lines.append(f"  {k}: {v}")
    for k, d in report.details.items():
        if not isinstance(d, dict):
            continue
        if d.get("skipped"):
            lines.append(f"  {k}: skipped ({', '.join(d['failing_hypotheses'])} fails)")
        elif "verdict" in d:
            lines.append(f"  {k}: verdict={str(d['verdict']).lower()} status={d['status']}")
    for n in report.notes:
        lines.append(f"  note: {n}")
    for w in report.witnesses[:3]:
        lines.append(f"  witness: {json.dumps(jsonable(w), sort_keys=True)}")
    return "\n".join(lines)


# -- commands ----------------------------------------------------------------------

def _load(args) -> GammaRing:
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from None
    return parse_instance_file(text, skip_assoc=True, name=path.stem)


def _options(args) -> VerifyOptions:
    opts = VerifyOptions(seed=args.seed, workers=args.workers)
    if args.cap is not None:
        opts.cap = opts.permutation_cap = args.cap
    if args.sample is not None:
        opts.sample = args.sample
    if args.budget is not None:
        opts.budget = args.budget
    if getattr(args, "n_max", None) is not None:
        opts.n_max = args.n_max
    return opts


def _checked(gr: GammaRing) -> VerdictReport | None:
    rep = validate_associativity(gr)
    return None if rep.verdict else rep


def cmd_validate(args):
    try:
        gr = _load(args)
    except ParseError as exc:
        if isinstance(exc.__cause__, NotWellDefined):
            w = {"kind": "not_well_defined", "line": exc.line, "reason": exc.reason}
            return VerdictReport(False, witnesses=[w]), None
        raise
    rep = validate_associativity(gr)
    return rep, gr


def cmd_analyze(args):
    gr = _load(args)
    bad = _checked(gr)
    if bad:
        return bad, gr
    cap = args.cap
    z = center(gr) if cap is None else center(gr, cap)
    semi = is_semiprime(gr) if cap is None else is_semiprime(gr, cap)
    prime = is_prime(gr) if cap is None else is_prime(gr, cap)
    comm = is_commutative(gr)
    hyp = {"commutative": comm.verdict, "prime": prime.verdict, "semiprime": semi.verdict}
    witnesses = []
    for key, rep in (("commutative", comm), ("prime", prime), ("semiprime", semi)):
        if rep.witnesses:
            witnesses.append({"property": key, **rep.witnesses[0]})
    details = {"center": {"order": z.order, "generators": z.generators,
                          "elements": z.elements if z.order <= 64 else None},
               "order_M": gr.m_group.order, "order_G": gr.g_group.order}
    # analysis always succeeds; property failures are facts, not a false verdict
    return VerdictReport(True, counters={"center_order": z.order}, hypothesis_notes=hyp,
                         notes=[f"witness for {w['property']} failing" for w in witnesses],
                         details=dict(details, witnesses=witnesses)), gr


def cmd_enum_maps(args):
    gr = _load(args)
    bad = _checked(gr)
    if bad:
        return bad, gr
    from .abelian import SearchStats
    stats = SearchStats()
    budget = args.budget if args.budget is not None else VerifyOptions().budget
    maps = enumerate_maps(gr, args.role, budget, workers=args.workers, scp=args.scp,
                          stats=stats)
    return VerdictReport(True, counters={"maps": len(maps), "nodes": stats.nodes,
                                         "pruned": stats.pruned},
                         details={"role": args.role, "scp": args.scp,
                                  "maps": [m.images for m in maps],
                                  "scp_flags": [is_scp(gr, m).verdict for m in maps]}), gr


def cmd_verify(args):
    gr = _load(args)
    bad = _checked(gr)
    if bad:
        return bad, gr
    return verify(gr, args.theorem, _options(args)), gr


def cmd_verify_all(args):
    gr = _load(args)
    bad = _checked(gr)
    if bad:
        return bad, gr
    return verify_all(gr, _options(args)), gr


def cmd_search(args):
    instances = None
    if args.source == "builtin":
        instances = list(builtin_instances().values())
    semiprime = {"any": None, "yes": True, "no": False}[args.semiprime]
    budget = args.budget if args.budget is not None else 10**6
    cfg = SearchConfig(args.target, instances=instances, recipe_space=args.recipe_space,
                       seed=args.seed, count=args.count, semiprime=semiprime, budget=budget,
                       workers=args.workers)
    return search_counterexample(cfg), None


def cmd_instance(args):
    gr, comments = build_recipe(args.recipe, args.params)
    text = emit_instance(gr, comments)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return VerdictReport(True, counters={"order_M": gr.m_group.order,
                                         "order_G": gr.g_group.order}), gr


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="tuple/element cap for exhaustive checks")
    common.add_argument("--sample", type=int, help="sample size above the cap")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--json", metavar="OUT", help="write a JSON report ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="node budget for map searches")
    common.add_argument("--timing", action="store_true", help="record elapsed time in reports")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="gammalab",
                                     description="Exhaustive checks on finite Gamma-rings.")
    parser.add_argument("--version", action="version", version=f"gammalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check well-definedness and associativity")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="center, prime, semiprime, commutative")
    p.add_argument("file")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("enum-maps", parents=[common], help="enumerate maps of a role")
    p.add_argument("file")
    p.add_argument("--role", required=True, choices=[r.value for r in MapRole])
    p.add_argument("--scp", action="store_true", help="keep only scp maps")
    p.set_defaults(run=cmd_enum_maps)

    p = sub.add_parser("verify", parents=[common], help="verify one theorem")
    p.add_argument("file")
    p.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    p.add_argument("--n-max", type=int, dest="n_max")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("verify-all", parents=[common], help="verify every applicable theorem")
    p.add_argument("file")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.set_defaults(run=cmd_verify_all)

    p = sub.add_parser("search", parents=[common], help="counterexample search")
    p.add_argument("--target", required=True, choices=TARGETS)
    p.add_argument("--source", choices=["random", "builtin"], default="random")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--recipe-space", choices=RECIPE_SPACES, default="all")
    p.add_argument("--semiprime", choices=["any", "yes", "no"], default="any")
    p.set_defaults(run=cmd_search)

    p = sub.add_parser("instance", parents=[common], help="write a built-in instance file")
    p.add_argument("recipe", choices=sorted(RECIPES))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_instance)
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.workers < 1 or (args.budget is not None and args.budget < 1):
        print("error: --workers and --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        report, gr = args.run(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GammaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start if args.timing else None

    options = {k: getattr(args, k) for k in ("cap", "sample", "budget", "n_max", "theorem",
                                             "role", "scp", "target", "source", "count",
                                             "recipe_space", "semiprime", "recipe", "params")
               if hasattr(args, k)}
    if args.json:
        doc = report_document(args.command, report, instance=gr, options=options,
                              seed=args.seed, elapsed=elapsed)
        text = dump_report(doc)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text)
    to_stdout = args.json == "-" or (args.command == "instance" and args.output in (None, "-"))
    if not args.quiet and not to_stdout:
        print(_summary(args.command, report))

    if report.status == BUDGET_EXHAUSTED:
        return EXIT_CAP
    if not report.verdict or report.falsified:
        return EXIT_FALSE
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
