"""Finite permutation groups realized as indexed element tables.

Elements are numbered breadth-first from the identity (index 0).  Products
use function composition: ``product(x, y)`` is the permutation "apply ``y``,
then ``x``".  Subgroups are membership bitmasks tied to one table.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Perm = tuple[int, ...]

ELEMENT_CAP = 10**6
_TABLE_LIMIT = 2048


class ResourceCapError(RuntimeError):
    """A configured size cap was exceeded."""


def compose(x: Perm, y: Perm) -> Perm:
    return tuple(x[i] for i in y)


def invert_perm(x: Perm) -> Perm:
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[xi] = i
    return tuple(out)


def cycle_string(perm: Perm) -> str:
    """1-based cycle notation, ``()`` for the identity."""
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


class GroupTable:
    """A finite group given by permutation generators.

    Attributes
    ----------
    order : int
    perms : tuple of permutations; ``perms[i]`` realizes element ``i``
    generator_indices : indices of the input generators
    label : free text
    """

    def __init__(self, perms: Sequence[Perm], generator_indices: Sequence[int], label: str = ""):
        self.perms: tuple[Perm, ...] = tuple(perms)
        self.order = len(self.perms)
        self.degree = len(self.perms[0])
        self.generator_indices = tuple(generator_indices)
        self.label = label
        self.index = {p: i for i, p in enumerate(self.perms)}

    def __repr__(self) -> str:
        return f"GroupTable({self.label or '?'}, order={self.order})"

    @cached_property
    def table(self) -> np.ndarray | None:
        if self.order > _TABLE_LIMIT:
            return None
        n = self.order
        tab = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(self.perms):
            for j, y in enumerate(self.perms):
                tab[i, j] = self.index[compose(x, y)]
        return tab

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(self.index[invert_perm(p)] for p in self.perms)

    def product(self, x: int, y: int) -> int:
        tab = self.table
        if tab is not None:
            return int(tab[x, y])
        return self.index[compose(self.perms[x], self.perms[y])]

    def conj(self, s: int, x: int) -> int:
        """``s x s^-1``."""
        return self.product(self.product(s, x), self.inverse[s])

    def power(self, x: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = self.product(out, x)
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.product(y, x)
            k += 1
        return k

    @property
    def elements(self) -> range:
        return range(self.order)

    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1)

    def check_axioms(self) -> bool:
        """Exhaustive associativity / identity / inverse check."""
        n = self.order
        inv = self.inverse
        for x in range(n):
            if self.product(0, x) != x or self.product(x, 0) != x:
                return False
            if self.product(x, inv[x]) != 0:
                return False
        tab = self.table
        if tab is not None:
            # (xy)z == x(yz) for all triples, vectorised over z
            for x in range(n):
                for y in range(n):
                    if not np.array_equal(tab[tab[x, y]], tab[x][tab[y]]):
                        return False
            return True
        for x in range(n):
            for y in range(n):
                xy = self.product(x, y)
                for z in range(n):
                    if self.product(xy, z) != self.product(x, self.product(y, z)):
                        return False
        return True


def build_group(generators: Iterable[Sequence[int]], degree: int | None = None,
                label: str = "", cap: int = ELEMENT_CAP) -> GroupTable:
    """Close a list of permutations (0-based image tuples) under composition.

    Enumeration is breadth-first from the identity, applying the generators
    in input order, so element numbering is reproducible.
    """
    gens = [tuple(int(i) for i in g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required when no generators are given")
        degree = len(gens[0])
    if degree <= 0:
        raise ValueError("permutation domain is empty")
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of {degree} points: {g}")
    identity = tuple(range(degree))
    perms = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in index:
                if len(perms) >= cap:
                    raise ResourceCapError(f"group closure exceeds {cap} elements")
                index[y] = len(perms)
                perms.append(y)
                queue.append(y)
    return GroupTable(perms, [index[g] for g in gens], label)


def direct_product(g: GroupTable, h: GroupTable, label: str = "") -> GroupTable:
    """``g × h`` acting on the disjoint union of the two domains."""
    n, m = g.degree, h.degree
    gens = []
    for i in g.generator_indices:
        gens.append(g.perms[i] + tuple(range(n, n + m)))
    for j in h.generator_indices:
        gens.append(tuple(range(n)) + tuple(n + k for k in h.perms[j]))
    if not gens:
        gens = [tuple(range(n + m))]
    return build_group(gens, n + m, label or f"{g.label}x{h.label}")


def pair_index(gh: GroupTable, g: GroupTable, h: GroupTable, a: int, b: int) -> int:
    """Index of ``(a, b)`` in a table built by :func:`direct_product`."""
    n = g.degree
    return gh.index[g.perms[a] + tuple(n + k for k in h.perms[b])]


@dataclass(frozen=True)
class Subgroup:
    group: GroupTable
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def members(self) -> tuple[int, ...]:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def _same(self, other: Subgroup) -> None:
        if other.group is not self.group:
            raise ValueError("subgroups belong to different group tables")

    def __le__(self, other: Subgroup) -> bool:
        self._same(other)
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: Subgroup) -> Subgroup:
        self._same(other)
        return Subgroup(self.group, self.mask & other.mask)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan members in index order."""
        gens: list[int] = []
        cur = self.group.trivial()
        for x in self.members:
            if x not in cur:
                gens.append(x)
                cur = subgroup_closure(self.group, gens)
                if cur.mask == self.mask:
                    break
        return tuple(gens)

    def label(self) -> str:
        if self.order == 1:
            return "1"
        return "<" + ", ".join(cycle_string(self.group.perms[x]) for x in self.generators) + ">"

    def __repr__(self) -> str:
        return f"Subgroup({self.label()}, order={self.order})"


def _mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def subgroup_closure(g: GroupTable, seed: Iterable[int]) -> Subgroup:
    seed = [int(x) for x in seed]
    for x in seed:
        if not 0 <= x < g.order:
            raise IndexError(f"element index {x} out of range")
    members = [0]
    mask = 1
    i = 0
    while i < len(members):
        x = members[i]
        i += 1
        for s in seed:
            y = g.product(x, s)
            if not mask >> y & 1:
                mask |= 1 << y
                members.append(y)
    return Subgroup(g, mask)


def conjugate_subgroup(g: GroupTable, h: Subgroup, s: int) -> Subgroup:
    """``s h s^-1``."""
    if h.group is not g:
        raise ValueError("subgroup belongs to a different group table")
    return Subgroup(g, _mask(g.conj(s, x) for x in h.members))


def normalizer(g: GroupTable, h: Subgroup) -> Subgroup:
    gens = h.generators
    mask = 0
    for s in g.elements:
        if all(g.conj(s, x) in h for x in gens):
            mask |= 1 << s
    return Subgroup(g, mask)


def transporter_count(g: GroupTable, q: Subgroup, p: Subgroup) -> int:
    """``|{s : s q s^-1 <= p}|``."""
    if q.group is not g or p.group is not g:
        raise ValueError("subgroup belongs to a different group table")
    gens = q.generators
    return sum(1 for s in g.elements if all(g.conj(s, x) in p for x in gens))


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def is_p_group(order: int, p: int) -> bool:
    while order % p == 0:
        order //= p
    return order == 1


def prime_of_p_group(order: int) -> int | None:
    """The prime ``p`` with ``order`` a power of ``p`` (None for order 1 or mixed)."""
    for p in range(2, order + 1):
        if order % p == 0:
            return p if is_p_group(order, p) else None
    return None


class Embedding:
    """An injective homomorphism of ``source`` into ``ambient``.

    Built by matching permutations, so both tables must act on the same domain.
    """

    def __init__(self, source: GroupTable, ambient: GroupTable, image_of: Sequence[int]):
        self.source = source
        self.ambient = ambient
        self.image_of = tuple(image_of)
        self.preimage = {y: x for x, y in enumerate(self.image_of)}
        if len(self.preimage) != source.order:
            raise ValueError("embedding is not injective")

    @classmethod
    def by_permutations(cls, source: GroupTable, ambient: GroupTable) -> Embedding:
        if source.degree != ambient.degree:
            raise ValueError("source and ambient act on different domains")
        try:
            image = [ambient.index[p] for p in source.perms]
        except KeyError:
            raise ValueError(f"{source.label or 'source'} is not contained in "
                             f"{ambient.label or 'ambient'}") from None
        return cls(source, ambient, image)

    def image(self, h: Subgroup) -> int:
        """Ambient bitmask of the image of a source subgroup."""
        return _mask(self.image_of[x] for x in h.members)

    @cached_property
    def image_mask(self) -> int:
        return _mask(self.image_of)

    def is_homomorphism(self) -> bool:
        s, a = self.source, self.ambient
        return all(self.image_of[s.product(x, y)] == a.product(self.image_of[x], self.image_of[y])
                   for x in s.elements for y in s.elements)


def is_sylow(e: Embedding, p: int) -> bool:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n, m = e.source.order, e.ambient.order
    return is_p_group(n, p) and (m // n) % p != 0
