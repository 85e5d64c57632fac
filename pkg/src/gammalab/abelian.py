"""Finite abelian groups given as products of cyclic factors, and additive maps.

Elements are plain tuples of ints, one coordinate per cyclic factor, each
reduced into ``range(d_i)``.  Element order is lexicographic on coordinates,
so the zero element always comes first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, ModulusOutOfRange, NotWellDefined, ShapeMismatch

Element = tuple[int, ...]

DEFAULT_ELEMENT_CAP = 2**16
DEFAULT_MAP_CAP = 2**26


@dataclass(frozen=True)
class FinAbGroup:
    """The group Z/d_1 x ... x Z/d_k.

    The moduli need not form a divisibility chain.
    """

    moduli: tuple[int, ...]
    order: int = field(init=False, compare=False)

    def __post_init__(self):
        moduli = tuple(int(d) for d in self.moduli)
        for d in moduli:
            if d < 2:
                raise ModulusOutOfRange(f"modulus {d} < 2")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "order", math.prod(moduli))

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def gen(self, i: int) -> Element:
        """The i-th canonical generator e_i."""
        return tuple(1 if t == i else 0 for t in range(len(self.moduli)))

    def gens(self) -> list[Element]:
        return [self.gen(i) for i in range(self.rank)]

    def check(self, a: Sequence[int]) -> Element:
        if len(a) != len(self.moduli):
            raise ShapeMismatch(
                f"element {tuple(a)} has {len(a)} coordinates, group {self} has {self.rank}")
        return tuple(x % d for x, d in zip(a, self.moduli))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple(-x % d for x, d in zip(a, self.moduli))

    def scale(self, n: int, a: Element) -> Element:
        return tuple(n * x % d for x, d in zip(a, self.moduli))

    def element_order(self, a: Element) -> int:
        return math.lcm(1, *(d // math.gcd(d, x) for x, d in zip(a, self.moduli)))

    def kills(self, n: int, a: Element) -> bool:
        """True when n*a == 0."""
        return all(n * x % d == 0 for x, d in zip(a, self.moduli))

    def torsion(self, n: int) -> list[Element]:
        """All y with n*y == 0, in lexicographic order."""
        per_coord = [range(0, d, d // math.gcd(n, d)) for d in self.moduli]
        return list(itertools.product(*per_coord))

    def index(self, a: Element) -> int:
        """Rank of ``a`` in the lexicographic element order."""
        idx = 0
        for x, d in zip(a, self.moduli):
            idx = idx * d + x
        return idx

    def element(self, idx: int) -> Element:
        coords = []
        for d in reversed(self.moduli):
            idx, x = divmod(idx, d)
            coords.append(x)
        return tuple(reversed(coords))

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP, force: bool = False) -> list[Element]:
        if self.order > cap and not force:
            raise CapExceeded(f"group of order {self.order} exceeds element cap {cap}",
                              size=self.order, cap=cap)
        return list(itertools.product(*(range(d) for d in self.moduli)))

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, rank) int64 array of all elements in canonical order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.moduli, dtype=np.int64)
        return grids.reshape(self.rank, -1).T.copy()

    @cached_property
    def moduli_array(self) -> np.ndarray:
        return np.asarray(self.moduli, dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        """Mixed-radix weights mapping a coordinate row to its element index."""
        out = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            out[i] = out[i + 1] * self.moduli[i + 1]
        return out

    def __str__(self):
        if not self.moduli:
            return "0"
        return " x ".join(f"Z{d}" for d in self.moduli)


def make_group(moduli: Sequence[int]) -> FinAbGroup:
    return FinAbGroup(tuple(moduli))


def add(G: FinAbGroup, a: Sequence[int], b: Sequence[int]) -> Element:
    return G.add(G.check(a), G.check(b))


def scale(G: FinAbGroup, n: int, a: Sequence[int]) -> Element:
    return G.scale(n, G.check(a))


def enumerate_elements(G: FinAbGroup, cap: int = DEFAULT_ELEMENT_CAP,
                       force: bool = False) -> list[Element]:
    return G.elements(cap, force)


@dataclass(frozen=True)
class AdditiveMap:
    """Homomorphism determined by the images of the canonical generators."""

    domain: FinAbGroup
    codomain: FinAbGroup
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        out = [0] * self.codomain.rank
        for xi, img in zip(x, self.images):
            if xi:
                for t, y in enumerate(img):
                    out[t] += xi * y
        return tuple(v % d for v, d in zip(out, self.codomain.moduli))

    @cached_property
    def matrix(self) -> np.ndarray:
        """(domain rank, codomain rank) integer matrix of generator images."""
        return np.asarray(self.images, dtype=np.int64).reshape(
            self.domain.rank, self.codomain.rank)

    def is_zero(self) -> bool:
        return all(not any(img) for img in self.images)

    def __str__(self):
        body = ", ".join(f"e{i}->{img}" for i, img in enumerate(self.images))
        return "{" + body + "}"


def make_additive_map(domain: FinAbGroup, codomain: FinAbGroup,
                      images: Sequence[Sequence[int]]) -> AdditiveMap:
    if len(images) != domain.rank:
        raise ShapeMismatch(f"expected {domain.rank} generator images, got {len(images)}")
    imgs = tuple(codomain.check(y) for y in images)
    for i, (d, y) in enumerate(zip(domain.moduli, imgs)):
        if not codomain.kills(d, y):
            raise NotWellDefined(i, f"{d}*{y} != 0")
    return AdditiveMap(domain, codomain, imgs)


def identity_map(G: FinAbGroup) -> AdditiveMap:
    return AdditiveMap(G, G, tuple(G.gens()))


def zero_map(domain: FinAbGroup, codomain: FinAbGroup) -> AdditiveMap:
    return AdditiveMap(domain, codomain, (codomain.zero,) * domain.rank)


def map_difference(f: AdditiveMap, g: AdditiveMap) -> AdditiveMap:
    """Pointwise f - g."""
    C = f.codomain
    return AdditiveMap(f.domain, C, tuple(C.sub(a, b) for a, b in zip(f.images, g.images)))


def map_sum(f: AdditiveMap, g: AdditiveMap) -> AdditiveMap:
    C = f.codomain
    return AdditiveMap(f.domain, C, tuple(C.add(a, b) for a, b in zip(f.images, g.images)))


@dataclass
class SearchStats:
    """Counters filled in by the backtracker."""

    nodes: int = 0
    pruned: int = 0
    found: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.pruned += other.pruned
        self.found += other.found


Pruner = Callable[[tuple[Element, ...]], bool]


def candidate_count(domain: FinAbGroup, codomain: FinAbGroup) -> int:
    return math.prod(len(codomain.torsion(d)) for d in domain.moduli)


def enumerate_additive_maps(domain: FinAbGroup, codomain: FinAbGroup,
                            pruner: Pruner | None = None, *,
                            max_candidates: int = DEFAULT_MAP_CAP,
                            force: bool = False,
                            node_budget: int | None = None,
                            partition: tuple[int, int] = (0, 1),
                            stats: SearchStats | None = None) -> Iterator[AdditiveMap]:
    """Yield additive maps by backtracking over generator images.

    ``pruner`` sees the tuple of images assigned so far (after every new
    image) and returns False to cut the branch.  Maps come out in
    lexicographic order of their image tuples.  ``partition=(w, n)`` keeps
    only the first-generator candidates whose position is congruent to w
    mod n, which splits the search into n disjoint parts.
    """
    total = candidate_count(domain, codomain)
    if total > max_candidates and not force:
        raise CapExceeded(f"{total} candidate maps exceed cap {max_candidates}",
                          size=total, cap=max_candidates)
    if stats is None:
        stats = SearchStats()
    cands = [codomain.torsion(d) for d in domain.moduli]
    worker, n_workers = partition
    k = domain.rank
    if k == 0:
        if worker == 0:
            stats.found += 1
            yield AdditiveMap(domain, codomain, ())
        return
    cands[0] = [y for pos, y in enumerate(cands[0]) if pos % n_workers == worker]
    survivors = [0] * k
    prefix: list[Element] = []

    def descend(depth: int) -> Iterator[AdditiveMap]:
        for y in cands[depth]:
            stats.nodes += 1
            if node_budget is not None and stats.nodes > node_budget:
                raise CapExceeded(
                    f"search exceeded {node_budget} nodes at depth {depth}",
                    size=stats.nodes, cap=node_budget,
                    survivors=survivors[depth], depth=depth)
            prefix.append(y)
            t = tuple(prefix)
            if pruner is None or pruner(t):
                survivors[depth] += 1
                if depth + 1 == k:
                    stats.found += 1
                    yield AdditiveMap(domain, codomain, t)
                else:
                    yield from descend(depth + 1)
            else:
                stats.pruned += 1
            prefix.pop()

    yield from descend(0)
