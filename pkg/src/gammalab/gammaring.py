"""Gamma-rings given by structure constants.

A Gamma-ring here is a pair of finite abelian groups (M, G) together with a
structure tensor ``T[i][j][k] = e_i f_j e_k`` (an element of M) for the
canonical generators e_* of M and f_* of G.  The product of arbitrary
elements follows by tri-additivity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from .abelian import Element, FinAbGroup
from .errors import CapExceeded, NotValidated, NotWellDefined, TensorShapeMismatch
from .report import VerdictReport

TABLE_CAP = 2**22

Tensor = tuple[tuple[tuple[Element, ...], ...], ...]


@dataclass(frozen=True)
class GammaRing:
    m_group: FinAbGroup
    g_group: FinAbGroup
    tensor: Tensor
    name: str = field(default="", compare=False)
    _memo: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def M(self) -> FinAbGroup:
        return self.m_group

    @property
    def G(self) -> FinAbGroup:
        return self.g_group

    def memo(self, key, compute):
        """Per-instance cache for derived objects (center, verdicts, ...)."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value

    @cached_property
    def entries(self) -> list[tuple[int, int, int, tuple[tuple[int, int], ...]]]:
        """Nonzero tensor entries as (i, j, k, ((coord, value), ...))."""
        out = []
        for i, row in enumerate(self.tensor):
            for j, col in enumerate(row):
                for k, v in enumerate(col):
                    nz = tuple((t, x) for t, x in enumerate(v) if x)
                    if nz:
                        out.append((i, j, k, nz))
        return out

    @cached_property
    def tensor_array(self) -> np.ndarray:
        kM, kG = self.m_group.rank, self.g_group.rank
        return np.asarray(self.tensor, dtype=np.int64).reshape(kM, kG, kM, kM)

    def mul(self, a: Element, alpha: Element, b: Element) -> Element:
        """a alpha b, without shape checks."""
        acc = [0] * self.m_group.rank
        for i, j, k, nz in self.entries:
            c = a[i] * alpha[j] * b[k]
            if c:
                for t, x in nz:
                    acc[t] += c * x
        return tuple(v % d for v, d in zip(acc, self.m_group.moduli))

    def word(self, *terms: Element) -> Element:
        """Left-to-right product x0 g1 x1 g2 x2 ... of an odd-length word."""
        acc = terms[0]
        for t in range(1, len(terms), 2):
            acc = self.mul(acc, terms[t], terms[t + 1])
        return acc

    def comm(self, a: Element, b: Element, alpha: Element) -> Element:
        """[a, b]_alpha = a alpha b - b alpha a."""
        return self.m_group.sub(self.mul(a, alpha, b), self.mul(b, alpha, a))

    @cached_property
    def associativity(self) -> VerdictReport:
        return _check_associativity(self)

    @property
    def is_valid(self) -> bool:
        return self.associativity.verdict

    @cached_property
    def table(self) -> "ProductTable":
        return ProductTable(self)

    def label(self) -> str:
        return self.name or f"GammaRing(M={self.m_group}, G={self.g_group})"


def tensor_from_entries(kM: int, kG: int, entries: dict, m_group: FinAbGroup) -> Tensor:
    """Dense tensor from a sparse ``{(i, j, k): element}`` mapping."""
    zero = m_group.zero
    return tuple(
        tuple(tuple(m_group.check(entries[(i, j, k)]) if (i, j, k) in entries else zero
                    for k in range(kM))
              for j in range(kG))
        for i in range(kM))


def build_gamma_ring(m_group: FinAbGroup, g_group: FinAbGroup, tensor: Any,
                     name: str = "") -> GammaRing:
    """Assemble a Gamma-ring, checking tensor shape and well-definedness.

    Associativity is *not* checked here; see :func:`validate_associativity`.
    """
    kM, kG = m_group.rank, g_group.rank
    if isinstance(tensor, np.ndarray):
        tensor = tensor.tolist()
    if len(tensor) != kM or any(len(row) != kG for row in tensor) \
            or any(len(col) != kM for row in tensor for col in row):
        raise TensorShapeMismatch(f"tensor shape does not match ranks ({kM}, {kG}, {kM})")
    dense = []
    for i, row in enumerate(tensor):
        drow = []
        for j, col in enumerate(row):
            dcol = []
            for k, v in enumerate(col):
                if len(v) != kM:
                    raise TensorShapeMismatch(
                        f"entry ({i},{j},{k}) has {len(v)} coordinates, M has rank {kM}")
                v = m_group.check(v)
                for n in (m_group.moduli[i], g_group.moduli[j], m_group.moduli[k]):
                    if not m_group.kills(n, v):
                        raise NotWellDefined((i, j, k), f"{n}*{v} != 0")
                dcol.append(v)
            drow.append(tuple(dcol))
        dense.append(tuple(drow))
    return GammaRing(m_group, g_group, tuple(dense), name)


def _check_associativity(gr: GammaRing) -> VerdictReport:
    M, G = gr.m_group, gr.g_group
    eM, eG = M.gens(), G.gens()
    count = 0
    for i, j, k, l, m in itertools.product(range(M.rank), range(G.rank), range(M.rank),
                                           range(G.rank), range(M.rank)):
        count += 1
        left = gr.mul(gr.tensor[i][j][k], eG[l], eM[m])
        right = gr.mul(eM[i], eG[j], gr.tensor[k][l][m])
        if left != right:
            return VerdictReport(False, witnesses=[{
                "generators": (i, j, k, l, m), "left": left, "right": right}],
                counters={"tuples": count})
    return VerdictReport(True, counters={"tuples": count})


def validate_associativity(gr: GammaRing) -> VerdictReport:
    """(e_i f_j e_k) f_l e_m == e_i f_j (e_k f_l e_m) on all generator 5-tuples."""
    return gr.associativity


def require_valid(gr: GammaRing) -> None:
    if not gr.is_valid:
        w = gr.associativity.witnesses[0]
        raise NotValidated(f"{gr.label()} is not associative at generators {w['generators']}")


def _m(gr: GammaRing, a) -> Element:
    return gr.m_group.check(a)


def _g(gr: GammaRing, alpha) -> Element:
    return gr.g_group.check(alpha)


def product(gr: GammaRing, a, alpha, b) -> Element:
    return gr.mul(_m(gr, a), _g(gr, alpha), _m(gr, b))


def commutator(gr: GammaRing, a, b, alpha) -> Element:
    return gr.comm(_m(gr, a), _m(gr, b), _g(gr, alpha))


def gamma_bracket(gr: GammaRing, a, alpha, beta, c, b) -> Element:
    """a[alpha, beta]_c b = a alpha c beta b - a beta c alpha b."""
    a, c, b = _m(gr, a), _m(gr, c), _m(gr, b)
    alpha, beta = _g(gr, alpha), _g(gr, beta)
    return gr.m_group.sub(gr.word(a, alpha, c, beta, b), gr.word(a, beta, c, alpha, b))


@dataclass(frozen=True)
class Residual:
    """LHS - RHS of a named identity at one input tuple."""

    identity: str
    value: Element
    inputs: tuple

    @property
    def is_zero(self) -> bool:
        return not any(self.value)


def commutator_expansion_residual(gr: GammaRing, side: str, a, b, c, alpha, beta) -> Residual:
    """Residual of the Gamma-ring commutator expansion.

    left:  [a, b alpha c]_beta = [a,b]_beta alpha c + b alpha [a,c]_beta
                                 + b beta a alpha c - b alpha a beta c
    right: [a alpha b, c]_beta = [a,c]_beta alpha b + a alpha [b,c]_beta
                                 + a alpha c beta b - a beta c alpha b
    """
    M = gr.m_group
    a, b, c = _m(gr, a), _m(gr, b), _m(gr, c)
    alpha, beta = _g(gr, alpha), _g(gr, beta)
    mul, comm = gr.mul, gr.comm
    if side == "left":
        lhs = comm(a, mul(b, alpha, c), beta)
        terms = [mul(comm(a, b, beta), alpha, c),
                 mul(b, alpha, comm(a, c, beta)),
                 mul(mul(b, beta, a), alpha, c),
                 M.neg(mul(mul(b, alpha, a), beta, c))]
    elif side == "right":
        lhs = comm(mul(a, alpha, b), c, beta)
        terms = [mul(comm(a, c, beta), alpha, b),
                 mul(a, alpha, comm(b, c, beta)),
                 mul(mul(a, alpha, c), beta, b),
                 M.neg(mul(mul(a, beta, c), alpha, b))]
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    rhs = M.zero
    for t in terms:
        rhs = M.add(rhs, t)
    return Residual(f"commutator_expansion_{side}", M.sub(lhs, rhs), (a, b, c, alpha, beta))


class ProductTable:
    """Dense index tables for exhaustive, vectorized checks on small instances.

    Elements are addressed by their canonical index.  ``prod[a, g, b]`` is the
    index of a g b, ``add[a, b]`` of a + b and ``neg[a]`` of -a.
    """

    def __init__(self, gr: GammaRing, cap: int = TABLE_CAP):
        M, G = gr.m_group, gr.g_group
        nM, nG = M.order, G.order
        size = nM * nM * nG
        if size > cap:
            raise CapExceeded(f"product table of {size} entries exceeds cap {cap}",
                              size=size, cap=cap)
        self.nM, self.nG = nM, nG
        d = M.moduli_array
        A, Gc = M.coords, G.coords
        T = gr.tensor_array
        strides = M.strides
        self.prod = np.empty((nM, nG, nM), dtype=np.int32)
        chunk = max(1, (1 << 20) // max(1, nG * nM * max(1, M.rank)))
        for lo in range(0, nM, chunk):
            Ac = A[lo:lo + chunk]
            # X[a, g, l, t] = sum_ij a_i g_j T[i, j, l, t]
            X = np.einsum("ai,gj,ijlt->aglt", Ac, Gc, T) % d if M.rank else \
                np.zeros((len(Ac), nG, 0, 0), dtype=np.int64)
            Y = np.einsum("aglt,bl->agbt", X, A) % d if M.rank else \
                np.zeros((len(Ac), nG, nM, 0), dtype=np.int64)
            self.prod[lo:lo + chunk] = (Y * strides).sum(-1)
        S = (A[:, None, :] + A[None, :, :]) % d
        self.add = (S * strides).sum(-1).astype(np.int32)
        self.neg = ((-A % d) * strides).sum(-1).astype(np.int32)

    def sub(self, x, y):
        return self.add[x, self.neg[y]]

    def comm(self, a, b, g):
        return self.sub(self.prod[a, g, b], self.prod[b, g, a])

    def word(self, *terms):
        acc = terms[0]
        for t in range(1, len(terms), 2):
            acc = self.prod[acc, terms[t], terms[t + 1]]
        return acc
