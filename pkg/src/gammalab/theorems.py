"""Exhaustive verifiers for the left-derivation and scp results, plus counterexample search.

Every verifier records the status of its hypotheses (semiprime, prime,
commutative) in ``hypothesis_notes`` and runs regardless, so the same code
explores what happens when a hypothesis is dropped.  A conclusion that
fails while its hypotheses hold is reported with status FALSIFICATION.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .abelian import AdditiveMap, Element, SearchStats, identity_map
from .errors import CapExceeded, NotLeftDerivation
from .gammaring import GammaRing, require_valid
from .instances import random_instance
from .maps import (DEFAULT_NODE_BUDGET, MapRole, classify_map, defect_map, enumerate_maps,
                   image_in_center, is_scp)
from .report import BUDGET_EXHAUSTED, FALSIFICATION, OK, VACUOUS, VerdictReport
from .structure import center, is_central, is_commutative, is_prime, is_semiprime

DEFAULT_TUPLE_CAP = 2**22
DEFAULT_PERMUTATION_CAP = 2**26
DEFAULT_SAMPLE = 10**5
EXHAUSTIVE_MAX_N = 3
_CHUNK = 1 << 20


class TheoremId(str, Enum):
    REMARK_LEFT_DERIVATION = "remark_left_derivation"
    REMARK_CENTER_PERMUTATION = "remark_center_permutation"
    THM_LEFT_DERIVATION_CENTRAL = "thm_left_derivation_central"
    COR_PRIME_LEFT_DERIVATION = "cor_prime_left_derivation"
    THM_SCP_DERIVATION = "thm_scp_derivation"
    THM_SCP_ENDOMORPHISM = "thm_scp_endomorphism"
    COR_PRIME_SCP_IDENTITY = "cor_prime_scp_identity"


@dataclass
class VerifyOptions:
    cap: int = DEFAULT_TUPLE_CAP
    permutation_cap: int = DEFAULT_PERMUTATION_CAP
    sample: int = DEFAULT_SAMPLE
    seed: int = 0
    budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1
    n_max: int = 3


# -- tuple iteration -------------------------------------------------------------

def _decode(flat: np.ndarray, radices: Sequence[int]) -> list[np.ndarray]:
    cols = []
    for r in reversed(radices):
        flat, rem = np.divmod(flat, r)
        cols.append(rem)
    return cols[::-1]


def _tuple_batches(radices: Sequence[int], cap: int, sample: int, seed: int,
                   allow_sampling: bool = True) -> tuple[str, Iterator[list[np.ndarray]]]:
    """("exhaustive", batches) when the product of radices fits in cap, else sampled."""
    total = math.prod(radices)
    if total <= cap:
        def exhaustive():
            for lo in range(0, total, _CHUNK):
                yield _decode(np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64), radices)
        return "exhaustive", exhaustive()
    if not allow_sampling:
        raise CapExceeded(f"{total} tuples exceed cap {cap}", size=total, cap=cap)

    def sampled():
        rng = np.random.default_rng(seed)
        left = sample
        while left > 0:
            n = min(left, _CHUNK)
            yield [rng.integers(0, r, n) for r in radices]
            left -= n
    return "sampled", sampled()


def _map_index_array(gr: GammaRing, f: AdditiveMap) -> np.ndarray:
    M = gr.m_group
    if M.rank == 0:
        return np.zeros(1, dtype=np.int64)
    img = (M.coords @ f.matrix) % M.moduli_array
    return img @ M.strides


def _elem(G, idx) -> Element:
    return G.element(int(idx))


# -- remarks ----------------------------------------------------------------------

def verify_remark_left_derivation(gr: GammaRing, delta: AdditiveMap, *,
                                  cap: int = DEFAULT_TUPLE_CAP, sample: int = DEFAULT_SAMPLE,
                                  seed: int = 0) -> VerdictReport:
    """delta([a,b]_alpha) = 0 and [c,b]_beta alpha delta(a) = a alpha c beta delta(b) - c beta a alpha delta(b)."""
    require_valid(gr)
    cls = classify_map(gr, delta)[MapRole.LEFT_DERIVATION]
    if not cls.verdict:
        raise NotLeftDerivation(f"{delta} is not a left derivation: {cls.witnesses[0]}")
    M, G = gr.m_group, gr.g_group
    tb = gr.table
    D = _map_index_array(gr, delta)
    nM, nG = M.order, G.order
    counters: dict[str, int] = {}
    notes = []
    witnesses = []

    mode, batches = _tuple_batches([nM, nM, nG], cap, sample, seed)
    notes.append(f"commutator image: {mode}")
    n = 0
    for a, b, al in batches:
        bad = D[tb.comm(a, b, al)] != 0
        if bad.any() and not witnesses:
            t = int(np.flatnonzero(bad)[0])
            witnesses.append({"identity": "delta([a,b]_alpha)=0", "a": _elem(M, a[t]),
                              "b": _elem(M, b[t]), "alpha": _elem(G, al[t]),
                              "value": _elem(M, D[tb.comm(a[t], b[t], al[t])])})
        n += len(a)
    counters["pairs_checked"] = n

    mode, batches = _tuple_batches([nM, nM, nM, nG, nG], cap, sample, seed)
    notes.append(f"five-tuple identity: {mode}")
    n = 0
    for a, b, c, al, be in batches:
        lhs = tb.prod[tb.comm(c, b, be), al, D[a]]
        rhs = tb.sub(tb.word(a, al, c, be, D[b]), tb.word(c, be, a, al, D[b]))
        bad = lhs != rhs
        if bad.any() and len(witnesses) < 2:
            t = int(np.flatnonzero(bad)[0])
            witnesses.append({"identity": "[c,b]_beta alpha delta(a)", "a": _elem(M, a[t]),
                              "b": _elem(M, b[t]), "c": _elem(M, c[t]),
                              "alpha": _elem(G, al[t]), "beta": _elem(G, be[t]),
                              "lhs": _elem(M, lhs[t]), "rhs": _elem(M, rhs[t])})
        n += len(a)
    counters["five_tuples_checked"] = n
    counters["seed"] = seed
    return VerdictReport(not witnesses, witnesses=witnesses, counters=counters, notes=notes,
                         status=FALSIFICATION if witnesses else OK)


def _remark_left_derivations_all(gr: GammaRing, opts: VerifyOptions) -> VerdictReport:
    stats = SearchStats()
    maps = enumerate_maps(gr, MapRole.LEFT_DERIVATION, opts.budget, workers=opts.workers,
                          stats=stats)
    counters = {"left_derivations": len(maps), "nodes": stats.nodes,
                "pairs_checked": 0, "five_tuples_checked": 0}
    notes: list[str] = []
    for delta in maps:
        rep = verify_remark_left_derivation(gr, delta, cap=opts.cap, sample=opts.sample,
                                            seed=opts.seed)
        counters["pairs_checked"] += rep.counters["pairs_checked"]
        counters["five_tuples_checked"] += rep.counters["five_tuples_checked"]
        notes = rep.notes
        if not rep.verdict:
            w = dict(rep.witnesses[0], delta=delta.images)
            return VerdictReport(False, witnesses=[w], counters=counters, notes=notes,
                                 status=FALSIFICATION)
    return VerdictReport(True, counters=counters, notes=notes)


def verify_center_permutation(gr: GammaRing, n_max: int = 3, *,
                              centers: Sequence[Element] | None = None,
                              cap: int = DEFAULT_PERMUTATION_CAP, sample: int = DEFAULT_SAMPLE,
                              seed: int = 0, allow_sampling: bool = True) -> VerdictReport:
    """c b1 a1 ... bn an equals every rearrangement a1 b_s(1) ... c ... b_s(n) an, c central.

    The c is inserted after a_i for i = 0..n (i = 0 keeps c in front with the
    betas permuted).  Exhaustive for n <= 3 when the number of
    (c, a, beta) tuples fits in ``cap``; otherwise ``sample`` seeded tuples.
    """
    require_valid(gr)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    M, G = gr.m_group, gr.g_group
    if centers is None:
        cs = list(center(gr).elements)
    else:
        cs = [M.check(c) for c in centers]
        for c in cs:
            if is_central(gr, c) is not None:
                raise ValueError(f"{c} is not central")
    tb = gr.table
    cidx = np.asarray([M.index(c) for c in cs], dtype=np.int64)
    counters = {"centers": len(cs), "seed": seed}
    notes = []
    witnesses = []
    for n in range(1, n_max + 1):
        radices = [len(cs)] + [M.order, G.order] * n
        exhaustive_ok = n <= EXHAUSTIVE_MAX_N
        mode, batches = _tuple_batches(radices, cap if exhaustive_ok else 0, sample, seed + n,
                                       allow_sampling)
        notes.append(f"n={n}: {mode}")
        perms = list(itertools.permutations(range(n)))
        checked = 0
        for cols in batches:
            c = cidx[cols[0]]
            a = cols[1::2]
            be = cols[2::2]
            lhs = c
            for t in range(n):
                lhs = tb.prod[lhs, be[t], a[t]]
            for perm in perms:
                for pos in range(n + 1):
                    factors = list(a[:pos]) + [c] + list(a[pos:])
                    acc = factors[0]
                    for t in range(n):
                        acc = tb.prod[acc, be[perm[t]], factors[t + 1]]
                    bad = acc != lhs
                    if bad.any() and not witnesses:
                        s = int(np.flatnonzero(bad)[0])
                        witnesses.append({
                            "n": n, "c": _elem(M, c[s]),
                            "a": [_elem(M, x[s]) for x in a],
                            "beta": [_elem(G, x[s]) for x in be],
                            "permutation": list(perm), "position": pos,
                            "lhs": _elem(M, lhs[s]), "rhs": _elem(M, acc[s])})
            checked += len(cols[0])
        counters[f"tuples_n{n}"] = checked
        counters[f"rearrangements_n{n}"] = len(perms) * (n + 1)
    return VerdictReport(not witnesses, witnesses=witnesses, counters=counters, notes=notes,
                         status=FALSIFICATION if witnesses else OK)


# -- hypotheses ------------------------------------------------------------------

def _semiprime(gr: GammaRing) -> VerdictReport:
    return gr.memo("semiprime_report", lambda: is_semiprime(gr))


def _prime(gr: GammaRing) -> VerdictReport:
    return gr.memo("prime_report", lambda: is_prime(gr))


def _commutative(gr: GammaRing) -> VerdictReport:
    return gr.memo("commutative_report", lambda: is_commutative(gr))


def _hypothesis_witness(kind: str, rep: VerdictReport) -> list[dict]:
    return [dict(rep.witnesses[0], kind=kind)] if rep.witnesses else []


# -- section 2 -------------------------------------------------------------------

def verify_left_derivations_central(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET,
                                    workers: int = 1) -> VerdictReport:
    """Every left derivation maps M into Z(M) (conclusion checked even without semiprimeness)."""
    require_valid(gr)
    semi = _semiprime(gr).verdict
    stats = SearchStats()
    maps = enumerate_maps(gr, MapRole.LEFT_DERIVATION, budget, workers=workers, stats=stats)
    witnesses = []
    for delta in maps:
        rep = image_in_center(gr, delta)
        if not rep.verdict:
            witnesses.append(dict(rep.witnesses[0], delta=delta.images))
            break
    ok = not witnesses
    status = OK if ok else (FALSIFICATION if semi else OK)
    notes = [] if semi else ["hypothesis semiprime fails; conclusion checked anyway"]
    return VerdictReport(ok, witnesses=witnesses,
                         counters={"left_derivations": len(maps), "nodes": stats.nodes},
                         hypothesis_notes={"semiprime": semi}, notes=notes, status=status)


def verify_prime_left_derivation(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET,
                                 workers: int = 1) -> VerdictReport:
    """Prime with a nonzero left derivation implies commutative."""
    require_valid(gr)
    prime = _prime(gr)
    comm = _commutative(gr)
    notes = {"prime": prime.verdict, "commutative": comm.verdict}
    stats = SearchStats()
    maps = enumerate_maps(gr, MapRole.LEFT_DERIVATION, budget, workers=workers, stats=stats)
    nonzero = [d for d in maps if not d.is_zero()]
    counters = {"left_derivations": len(maps), "nonzero_left_derivations": len(nonzero),
                "nodes": stats.nodes}
    if not prime.verdict:
        return VerdictReport(True, witnesses=_hypothesis_witness("not_prime", prime),
                             counters=counters, hypothesis_notes=notes, status=VACUOUS,
                             notes=["hypothesis prime fails; implication holds vacuously"])
    if nonzero and not comm.verdict:
        return VerdictReport(False, witnesses=[{"delta": nonzero[0].images,
                                                "noncommuting": comm.witnesses[0]}],
                             counters=counters, hypothesis_notes=notes, status=FALSIFICATION)
    return VerdictReport(True, counters=counters, hypothesis_notes=notes)


# -- section 3 -------------------------------------------------------------------

def verify_scp_derivation(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET,
                          workers: int = 1) -> VerdictReport:
    """An scp derivation forces commutativity; on noncommutative rings none may exist."""
    require_valid(gr)
    semi = _semiprime(gr).verdict
    comm = _commutative(gr)
    stats = SearchStats()
    ders = enumerate_maps(gr, MapRole.DERIVATION, budget, workers=workers, stats=stats)
    scp = [d for d in ders if is_scp(gr, d).verdict]
    counters = {"derivations": len(ders), "scp_derivations": len(scp), "nodes": stats.nodes}
    hyp = {"semiprime": semi, "commutative": comm.verdict}
    if scp and not comm.verdict:
        return VerdictReport(False, witnesses=[{"derivation": scp[0].images,
                                                "noncommuting": comm.witnesses[0]}],
                             counters=counters, hypothesis_notes=hyp,
                             status=FALSIFICATION if semi else OK)
    return VerdictReport(True, counters=counters, hypothesis_notes=hyp)


def scp_endomorphisms(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET, workers: int = 1,
                      stats: SearchStats | None = None) -> tuple[list[AdditiveMap], list[AdditiveMap]]:
    """(all endomorphisms, the scp ones)."""
    endos = enumerate_maps(gr, MapRole.ENDOMORPHISM, budget, workers=workers, stats=stats)
    return endos, [s for s in endos if is_scp(gr, s).verdict]


def verify_scp_endomorphism(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET,
                            workers: int = 1) -> VerdictReport:
    """Endomorphism sigma is scp iff sigma - id is center-valued.

    Both directions are checked over every endomorphism.  The converse
    direction needs no hypothesis, so a failure there is always reported as
    a falsification.
    """
    require_valid(gr)
    semi = _semiprime(gr).verdict
    stats = SearchStats()
    endos = enumerate_maps(gr, MapRole.ENDOMORPHISM, budget, workers=workers, stats=stats)
    forward, backward = [], []
    n_scp = n_central = 0
    for s in endos:
        scp = is_scp(gr, s).verdict
        central = defect_map(gr, s).central
        n_scp += scp
        n_central += central
        if scp and not central and not forward:
            forward.append({"direction": "scp => central defect", "sigma": s.images})
        if central and not scp and not backward:
            backward.append({"direction": "central defect => scp", "sigma": s.images})
    witnesses = forward + backward
    ok = not witnesses
    status = OK
    if backward or (forward and semi):
        status = FALSIFICATION
    ident = identity_map(gr.m_group)
    non_identity = sum(1 for s in endos if s != ident and is_scp(gr, s).verdict)
    return VerdictReport(ok, witnesses=witnesses,
                         counters={"endomorphisms": len(endos), "scp_endomorphisms": n_scp,
                                   "central_defect": n_central,
                                   "non_identity_scp": non_identity, "nodes": stats.nodes},
                         hypothesis_notes={"semiprime": semi}, status=status)


def verify_prime_scp_identity(gr: GammaRing, *, budget: int = DEFAULT_NODE_BUDGET,
                              workers: int = 1) -> VerdictReport:
    """On a prime noncommutative instance the only scp endomorphism is the identity."""
    require_valid(gr)
    prime = _prime(gr)
    comm = _commutative(gr)
    stats = SearchStats()
    endos, scp = scp_endomorphisms(gr, budget=budget, workers=workers, stats=stats)
    ident = identity_map(gr.m_group)
    others = [s for s in scp if s != ident]
    counters = {"endomorphisms": len(endos), "scp_endomorphisms": len(scp),
                "non_identity_scp": len(others), "nodes": stats.nodes}
    hyp = {"prime": prime.verdict, "commutative": comm.verdict}
    if not prime.verdict or comm.verdict:
        notes = ["hypothesis prime and noncommutative fails; implication holds vacuously",
                 f"non-identity scp endomorphism exists: {bool(others)}"]
        w = _hypothesis_witness("not_prime", prime) if not prime.verdict else []
        return VerdictReport(True, witnesses=w, counters=counters, hypothesis_notes=hyp,
                             notes=notes, status=VACUOUS)
    if scp != [ident]:
        w = {"scp_endomorphisms": [s.images for s in scp]}
        return VerdictReport(False, witnesses=[w], counters=counters, hypothesis_notes=hyp,
                             status=FALSIFICATION)
    return VerdictReport(True, counters=counters, hypothesis_notes=hyp)


# -- registry --------------------------------------------------------------------

def hypotheses(gr: GammaRing, tid: TheoremId) -> dict[str, bool]:
    """Hypotheses a theorem needs, mapped to whether they hold on ``gr``."""
    tid = TheoremId(tid)
    if tid in (TheoremId.THM_LEFT_DERIVATION_CENTRAL, TheoremId.THM_SCP_DERIVATION,
               TheoremId.THM_SCP_ENDOMORPHISM):
        return {"semiprime": _semiprime(gr).verdict}
    if tid is TheoremId.COR_PRIME_LEFT_DERIVATION:
        return {"prime": _prime(gr).verdict}
    if tid is TheoremId.COR_PRIME_SCP_IDENTITY:
        return {"prime": _prime(gr).verdict, "noncommutative": not _commutative(gr).verdict}
    return {}


def verify(gr: GammaRing, tid: TheoremId | str, opts: VerifyOptions | None = None) -> VerdictReport:
    opts = opts or VerifyOptions()
    tid = TheoremId(tid)
    kw = {"budget": opts.budget, "workers": opts.workers}
    if tid is TheoremId.REMARK_LEFT_DERIVATION:
        return _remark_left_derivations_all(gr, opts)
    if tid is TheoremId.REMARK_CENTER_PERMUTATION:
        return verify_center_permutation(gr, opts.n_max, cap=opts.permutation_cap,
                                         sample=opts.sample, seed=opts.seed)
    fn = {
        TheoremId.THM_LEFT_DERIVATION_CENTRAL: verify_left_derivations_central,
        TheoremId.COR_PRIME_LEFT_DERIVATION: verify_prime_left_derivation,
        TheoremId.THM_SCP_DERIVATION: verify_scp_derivation,
        TheoremId.THM_SCP_ENDOMORPHISM: verify_scp_endomorphism,
        TheoremId.COR_PRIME_SCP_IDENTITY: verify_prime_scp_identity,
    }[tid]
    return fn(gr, **kw)


def verify_all(gr: GammaRing, opts: VerifyOptions | None = None) -> VerdictReport:
    """Run every theorem whose hypotheses hold; list the skipped ones with the failing hypothesis."""
    opts = opts or VerifyOptions()
    require_valid(gr)
    details = {}
    witnesses = []
    hyp_all: dict[str, bool] = {}
    falsified = False
    ran = skipped = 0
    for tid in TheoremId:
        hyp = hypotheses(gr, tid)
        hyp_all.update(hyp)
        failing = [h for h, ok in hyp.items() if not ok]
        if failing:
            skipped += 1
            details[tid.value] = {"skipped": True, "failing_hypotheses": failing}
            continue
        ran += 1
        rep = verify(gr, tid, opts)
        details[tid.value] = dict(rep.to_dict(), skipped=False)
        if not rep.verdict:
            witnesses.append({"theorem": tid.value, **rep.witnesses[0]})
        falsified |= rep.falsified or (not rep.verdict)
    return VerdictReport(not witnesses, witnesses=witnesses,
                         counters={"theorems_run": ran, "theorems_skipped": skipped},
                         hypothesis_notes=hyp_all, details=details,
                         status=FALSIFICATION if falsified else OK)


# -- counterexample search ----------------------------------------------------------

TARGETS = ("left-derivation-not-central", "scp-endo-defect-not-central",
           "scp-derivation-on-noncommutative")


@dataclass
class SearchConfig:
    """What to falsify and where to look.

    Instances come from ``instances`` when given, else from
    ``random_instance(seed + t, recipe_space)`` for t < count.
    ``semiprime`` filters the source (None keeps everything).
    ``budget`` caps the total number of backtracking nodes.
    """

    target: str
    instances: list[GammaRing] | None = None
    recipe_space: str = "all"
    seed: int = 0
    count: int = 100
    semiprime: bool | None = None
    budget: int = 10**6
    workers: int = 1

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}; choose from {TARGETS}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")


def _source(cfg: SearchConfig) -> Iterator[GammaRing]:
    if cfg.instances is not None:
        yield from cfg.instances
        return
    for t in range(cfg.count):
        yield random_instance(cfg.seed + t, cfg.recipe_space)


def _probe(gr: GammaRing, target: str, budget: int, workers: int,
           stats: SearchStats) -> dict | None:
    if target == "left-derivation-not-central":
        for delta in enumerate_maps(gr, MapRole.LEFT_DERIVATION, budget, workers=workers,
                                    stats=stats):
            rep = image_in_center(gr, delta)
            if not rep.verdict:
                return {"map": delta.images, "failing": rep.witnesses[0]}
    elif target == "scp-endo-defect-not-central":
        for s in enumerate_maps(gr, MapRole.ENDOMORPHISM, budget, workers=workers, stats=stats):
            if is_scp(gr, s).verdict:
                dm = defect_map(gr, s)
                if not dm.central:
                    return {"map": s.images, "defect": dm.defect.images}
    else:
        comm = _commutative(gr)
        if not comm.verdict:
            found = enumerate_maps(gr, MapRole.DERIVATION, budget, workers=workers, scp=True,
                                   stats=stats)
            if found:
                return {"map": found[0].images, "failing": comm.witnesses[0]}
    return None


def _probe_instance(gr: GammaRing, target: str, semiprime: bool | None, budget: int):
    """(semiprime, hit or None, nodes, exhausted), or None when filtered out."""
    semi = _semiprime(gr).verdict
    if semiprime is not None and semi != semiprime:
        return None
    stats = SearchStats()
    try:
        hit = _probe(gr, target, budget, 1, stats)
    except CapExceeded:
        return semi, None, stats.nodes, True
    return semi, hit, stats.nodes, False


def search_counterexample(cfg: SearchConfig) -> VerdictReport:
    """Look for the target violation with the semiprime hypothesis dropped.

    Instances are probed one per worker in batches of ``cfg.workers``; each
    probe in a batch gets the budget left at the start of the batch, and
    results are merged in source order, so the report depends only on the
    seed, the source and the worker count.  Running out of budget is
    reported with status budget_exhausted rather than raised.
    """
    counters = {"instances_tried": 0, "instances_filtered": 0, "semiprime_instances": 0,
                "nodes": 0, "seed": cfg.seed, "budget": cfg.budget}
    notes = [f"target={cfg.target}", f"seed={cfg.seed}"]
    batch_size = max(1, cfg.workers)
    pool = ProcessPoolExecutor(max_workers=batch_size) if batch_size > 1 else None
    try:
        source = _source(cfg)
        while True:
            batch = list(itertools.islice(source, batch_size))
            if not batch:
                break
            remaining = cfg.budget - counters["nodes"]
            args = [(gr, cfg.target, cfg.semiprime, remaining) for gr in batch]
            if pool is None:
                results = [_probe_instance(*a) for a in args]
            else:
                results = list(pool.map(_probe_instance, *zip(*args)))
            for gr, res in zip(batch, results):
                if res is None:
                    counters["instances_filtered"] += 1
                    continue
                semi, hit, nodes, exhausted = res
                counters["instances_tried"] += 1
                counters["semiprime_instances"] += semi
                counters["nodes"] += nodes
                if exhausted or counters["nodes"] > cfg.budget:
                    notes.append(f"budget exhausted on {gr.label()}")
                    return VerdictReport(True, counters=counters, notes=notes,
                                         status=BUDGET_EXHAUSTED)
                if hit is not None:
                    w = {"instance": gr.label(), "semiprime": semi, **hit}
                    return VerdictReport(False, witnesses=[w], counters=counters,
                                         hypothesis_notes={"semiprime": semi}, notes=notes,
                                         status=FALSIFICATION if semi else OK)
    finally:
        if pool is not None:
            pool.shutdown()
    notes.append("source exhausted without a counterexample")
    return VerdictReport(True, counters=counters, notes=notes)
