"""Built-in Gamma-ring constructions.

Everything here is assembled from associative ingredients (rings given by
structure constants, matrix triple products, direct products), so every
instance is associative by construction; constructors still run the
generator-level validation and refuse anything that fails it.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .abelian import AdditiveMap, DEFAULT_ELEMENT_CAP, Element, FinAbGroup, make_additive_map
from .errors import CapExceeded, NotValidated, NotWellDefined
from .gammaring import GammaRing, build_gamma_ring, require_valid


@dataclass(frozen=True)
class RingSpec:
    """An associative ring on a finite abelian group; mul[i][k] = e_i * e_k."""

    group: FinAbGroup
    mul: tuple[tuple[Element, ...], ...]
    unit: Element | None = None
    name: str = ""

    def times(self, x: Element, y: Element) -> Element:
        G = self.group
        acc = [0] * G.rank
        for i, xi in enumerate(x):
            if not xi:
                continue
            for k, yk in enumerate(y):
                if yk:
                    c = xi * yk
                    for t, v in enumerate(self.mul[i][k]):
                        acc[t] += c * v
        return tuple(v % d for v, d in zip(acc, G.moduli))


def make_ring(group: FinAbGroup, mul, unit: Element | None = None, name: str = "") -> RingSpec:
    k = group.rank
    table = tuple(tuple(group.check(mul[i][j]) for j in range(k)) for i in range(k))
    for i, j in itertools.product(range(k), repeat=2):
        for n in (group.moduli[i], group.moduli[j]):
            if not group.kills(n, table[i][j]):
                raise NotWellDefined((i, j), f"{n}*{table[i][j]} != 0")
    R = RingSpec(group, table, None if unit is None else group.check(unit), name)
    gens = group.gens()
    for i, j, l in itertools.product(range(k), repeat=3):
        if R.times(table[i][j], gens[l]) != R.times(gens[i], table[j][l]):
            raise NotValidated(f"ring {name!r} not associative at generators {(i, j, l)}")
    if R.unit is not None:
        for g in gens:
            if R.times(R.unit, g) != g or R.times(g, R.unit) != g:
                raise NotValidated(f"ring {name!r}: {R.unit} is not a unit")
    return R


def zn_ring(n: int) -> RingSpec:
    return make_ring(FinAbGroup((n,)), [[(1,)]], (1,), f"Z{n}")


def zero_ring(moduli: Sequence[int]) -> RingSpec:
    G = FinAbGroup(tuple(moduli))
    return make_ring(G, [[G.zero] * G.rank for _ in range(G.rank)], None, f"zero{list(moduli)}")


def dual_numbers(q: int = 2) -> RingSpec:
    """Z_q[t]/(t^2) on the basis {1, t}."""
    G = FinAbGroup((q, q))
    mul = [[(1, 0), (0, 1)],
           [(0, 1), (0, 0)]]
    return make_ring(G, mul, (1, 0), f"Z{q}[t]/(t^2)")


def f4() -> RingSpec:
    """F_4 = Z_2[x]/(x^2 + x + 1) on the basis {1, x}."""
    G = FinAbGroup((2, 2))
    mul = [[(1, 0), (0, 1)],
           [(0, 1), (1, 1)]]
    return make_ring(G, mul, (1, 0), "F4")


def matrix_subring(n: int, q: int, positions: Sequence[tuple[int, int]], name: str) -> RingSpec:
    """Span of the matrix units E_rs for (r, s) in ``positions`` (must be closed)."""
    pos = sorted(positions)
    where = {p: t for t, p in enumerate(pos)}
    G = FinAbGroup((q,) * len(pos))
    mul = []
    for (r, s) in pos:
        row = []
        for (u, v) in pos:
            e = [0] * len(pos)
            if s == u:
                e[where[(r, v)]] = 1
            row.append(tuple(e))
        mul.append(row)
    unit = None
    if all((r, r) in where for r in range(n)):
        u = [0] * len(pos)
        for r in range(n):
            u[where[(r, r)]] = 1
        unit = tuple(u)
    return make_ring(G, mul, unit, name)


def matrix_ring(n: int, q: int) -> RingSpec:
    return matrix_subring(n, q, list(itertools.product(range(n), repeat=2)), f"M{n}(Z{q})")


def upper_triangular(n: int, q: int) -> RingSpec:
    return matrix_subring(n, q, [(r, s) for r in range(n) for s in range(r, n)], f"T{n}(Z{q})")


def strictly_upper(n: int, q: int) -> RingSpec:
    return matrix_subring(n, q, [(r, s) for r in range(n) for s in range(r + 1, n)],
                          f"N{n}(Z{q})")


def ring_product(R1: RingSpec, R2: RingSpec) -> RingSpec:
    k1, k2 = R1.group.rank, R2.group.rank
    G = FinAbGroup(R1.group.moduli + R2.group.moduli)
    z1, z2 = R1.group.zero, R2.group.zero
    mul = []
    for i in range(k1 + k2):
        row = []
        for j in range(k1 + k2):
            if i < k1 and j < k1:
                row.append(R1.mul[i][j] + z2)
            elif i >= k1 and j >= k1:
                row.append(z1 + R2.mul[i - k1][j - k1])
            else:
                row.append(G.zero)
        mul.append(row)
    unit = None
    if R1.unit is not None and R2.unit is not None:
        unit = R1.unit + R2.unit
    return make_ring(G, mul, unit, f"{R1.name}x{R2.name}")


def ring_as_gamma_ring(R: RingSpec, gamma: str = "whole_ring", *, n: int | None = None,
                       gens: Sequence[Element] | None = None,
                       moduli: Sequence[int] | None = None,
                       name: str | None = None) -> GammaRing:
    """View an associative ring as a Gamma-ring.

    gamma="whole_ring": G is the additive group of R, a g b = a*g*b.
    gamma="zn":         G = Z_n acting by integer multiples, a k b = k(ab).
    gamma="subgroup":   G is free on ``gens`` (elements of R) with the given
                        ``moduli``, a u_j b = a*u_j*b.
    """
    M = R.group
    gM = M.gens()
    if gamma == "whole_ring":
        us, G = gM, M
        label = f"{R.name}[G=R]"
    elif gamma == "zn":
        if n is None:
            raise ValueError("gamma='zn' needs n")
        G = FinAbGroup((n,))
        us = None
        label = f"{R.name}[G=Z{n}]"
    elif gamma == "subgroup":
        if gens is None or moduli is None or len(gens) != len(moduli):
            raise ValueError("gamma='subgroup' needs matching gens and moduli")
        us = [M.check(u) for u in gens]
        G = FinAbGroup(tuple(moduli))
        for j, (u, c) in enumerate(zip(us, G.moduli)):
            if not M.kills(c, u):
                raise NotWellDefined(j, f"gamma generator {u} has order not dividing {c}")
        label = f"{R.name}[G=<{len(us)} gens>]"
    else:
        raise ValueError(f"unknown gamma choice {gamma!r}")
    tensor = []
    for i in range(M.rank):
        row = []
        for j in range(G.rank):
            if us is None:
                row.append([R.mul[i][k] for k in range(M.rank)])
            else:
                left = R.times(gM[i], us[j])
                row.append([R.times(left, gM[k]) for k in range(M.rank)])
        tensor.append(row)
    gr = build_gamma_ring(M, G, tensor, name or label)
    require_valid(gr)
    return gr


def rect_matrix_instance(m: int, n: int, q: int, cap: int = DEFAULT_ELEMENT_CAP) -> GammaRing:
    """M = m x n matrices, G = n x m matrices over Z_q, product = matrix triple product."""
    if m < 1 or n < 1 or q < 2:
        raise ValueError("need m, n >= 1 and q >= 2")
    if q ** (m * n) > cap:
        raise CapExceeded(f"|M| = {q}^{m * n} exceeds cap {cap}", size=q ** (m * n), cap=cap)
    M = FinAbGroup((q,) * (m * n))
    G = FinAbGroup((q,) * (n * m))
    mi = lambda r, s: r * n + s  # noqa: E731
    gi = lambda u, v: u * m + v  # noqa: E731
    entries = {}
    for r, s, v, x in itertools.product(range(m), range(n), range(m), range(n)):
        # E_rs E_sv E_vx = E_rx
        e = [0] * (m * n)
        e[mi(r, x)] = 1
        entries[(mi(r, s), gi(s, v), mi(v, x))] = tuple(e)
    tensor = [[[entries.get((i, j, k), M.zero) for k in range(M.rank)]
               for j in range(G.rank)] for i in range(M.rank)]
    gr = build_gamma_ring(M, G, tensor, f"rect({m},{n},{q})")
    require_valid(gr)
    return gr


def direct_product(gr1: GammaRing, gr2: GammaRing, name: str | None = None) -> GammaRing:
    require_valid(gr1)
    require_valid(gr2)
    k1, l1 = gr1.m_group.rank, gr1.g_group.rank
    k2, l2 = gr2.m_group.rank, gr2.g_group.rank
    M = FinAbGroup(gr1.m_group.moduli + gr2.m_group.moduli)
    G = FinAbGroup(gr1.g_group.moduli + gr2.g_group.moduli)
    z1, z2 = gr1.m_group.zero, gr2.m_group.zero
    tensor = []
    for i in range(k1 + k2):
        row = []
        for j in range(l1 + l2):
            col = []
            for k in range(k1 + k2):
                if i < k1 and j < l1 and k < k1:
                    col.append(gr1.tensor[i][j][k] + z2)
                elif i >= k1 and j >= l1 and k >= k1:
                    col.append(z1 + gr2.tensor[i - k1][j - l1][k - k1])
                else:
                    col.append(M.zero)
            row.append(col)
        tensor.append(row)
    gr = build_gamma_ring(M, G, tensor, name or f"{gr1.label()} x {gr2.label()}")
    require_valid(gr)
    return gr


def trivial_instance() -> GammaRing:
    return build_gamma_ring(FinAbGroup(()), FinAbGroup(()), [], "trivial")


def z2_instance() -> GammaRing:
    return ring_as_gamma_ring(zn_ring(2), "whole_ring", name="Z2")


def dual_instance() -> GammaRing:
    """Z_2[t]/(t^2) with G = Z_2 acting by multiples."""
    return ring_as_gamma_ring(dual_numbers(2), "zn", n=2, name="dual")


def paper_example_analog() -> tuple[GammaRing, AdditiveMap]:
    """M = M_2(F_2) x F_4 with G = M_2(F_2) x F_2, and sigma = (id, Frobenius).

    Basis of M: E11, E12, E21, E22, 1, x (x^2 = x + 1).  sigma fixes the
    matrix part and squares the field part; it is a non-identity
    endomorphism because the G-components lie in F_2, where squaring is
    trivial.
    """
    R = ring_product(matrix_ring(2, 2), f4())
    gens = [R.group.gen(t) for t in range(4)] + [R.group.gen(4)]
    gr = ring_as_gamma_ring(R, "subgroup", gens=gens, moduli=[2] * 5, name="m2f2_x_f4")
    M = gr.m_group
    images = [M.gen(t) for t in range(5)] + [M.add(M.gen(4), M.gen(5))]
    sigma = make_additive_map(M, M, images)
    return gr, sigma


def builtin_instances() -> dict[str, GammaRing]:
    """The shipped instance suite, keyed by short name."""
    z2 = z2_instance()
    rect12 = rect_matrix_instance(1, 2, 2)
    return {
        "z2": z2,
        "dual": dual_instance(),
        "rect12": rect12,
        "rect21": rect_matrix_instance(2, 1, 2),
        "z2xz2": direct_product(z2, z2, "z2xz2"),
        "rect12xz2": direct_product(rect12, z2, "rect12xz2"),
        "m2f2_x_f4": paper_example_analog()[0],
    }


# -- random generation -------------------------------------------------------

_RECT_SHAPES = [(1, 1, 2), (1, 1, 3), (1, 1, 5), (1, 2, 2), (2, 1, 2), (1, 2, 3),
                (2, 1, 3), (1, 3, 2), (3, 1, 2), (2, 2, 2), (1, 4, 2)]

_RINGS: list[Callable[[], RingSpec]] = [
    lambda: zn_ring(2), lambda: zn_ring(3), lambda: zn_ring(4), lambda: zn_ring(6),
    lambda: dual_numbers(2), lambda: dual_numbers(3), f4,
    lambda: upper_triangular(2, 2), lambda: strictly_upper(3, 2),
    lambda: zero_ring([2, 2]), lambda: ring_product(zn_ring(2), dual_numbers(2)),
    lambda: matrix_subring(2, 2, [(0, 0), (0, 1)], "E11+E12(Z2)"),
    lambda: matrix_subring(2, 2, [(0, 0), (1, 0)], "E11+E21(Z2)"),
]

RECIPE_SPACES = ("all", "rect", "rings", "products")
MAX_RANDOM_ORDER = 16


def _random_rect(rng: random.Random) -> GammaRing:
    m, n, q = rng.choice(_RECT_SHAPES)
    return rect_matrix_instance(m, n, q)


def _random_ring_instance(rng: random.Random) -> GammaRing:
    R = rng.choice(_RINGS)()
    M = R.group
    choice = rng.choice(["whole_ring", "zn", "subgroup"])
    if choice == "zn":
        exponent = math.lcm(1, *M.moduli)
        return ring_as_gamma_ring(R, "zn", n=exponent * rng.choice([1, 2]))
    if choice == "subgroup":
        basis = M.gens()
        picks = sorted(rng.sample(range(M.rank), rng.randint(1, M.rank)))
        return ring_as_gamma_ring(R, "subgroup", gens=[basis[p] for p in picks],
                                  moduli=[M.moduli[p] for p in picks])
    return ring_as_gamma_ring(R, "whole_ring")


def _random_any(rng: random.Random, space: str, depth: int = 0) -> GammaRing:
    if space == "all":
        space = rng.choice(["rect", "rings", "products"])
    if space == "rect":
        return _random_rect(rng)
    if space == "rings":
        return _random_ring_instance(rng)
    if space == "products":
        a = _random_any(rng, rng.choice(["rect", "rings"]), depth + 1)
        b = _random_any(rng, rng.choice(["rect", "rings"]), depth + 1)
        return direct_product(a, b)
    raise ValueError(f"unknown recipe space {space!r}")


def random_instance(seed: int, recipe_space: str = "all", max_order: int = MAX_RANDOM_ORDER,
                    retries: int = 100) -> GammaRing:
    """A validated instance drawn from the constructors above, reproducible from seed.

    Candidates with |M| above ``max_order`` are rejected and redrawn.
    """
    if recipe_space not in RECIPE_SPACES:
        raise ValueError(f"unknown recipe space {recipe_space!r}")
    rng = random.Random(seed)
    for _ in range(retries):
        gr = _random_any(rng, recipe_space)
        if gr.m_group.order <= max_order:
            require_valid(gr)
            return GammaRing(gr.m_group, gr.g_group, gr.tensor,
                             f"random({seed},{recipe_space}):{gr.label()}")
    raise CapExceeded(f"no instance with |M| <= {max_order} after {retries} draws")
