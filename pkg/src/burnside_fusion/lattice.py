"""The subgroup poset of a finite group: enumeration, conjugacy classes,
incidence / Möbius matrices and chain counts."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import _linalg
from .group import (
    GroupTable,
    ResourceCapError,
    Subgroup,
    conjugate_subgroup,
    normalizer,
    subgroup_closure,
)

SUBGROUP_CAP = 10**5


class SubgroupLattice:
    """All subgroups of ``group`` in a fixed order.

    Subgroups are sorted by order, then by their sorted member lists, so
    inclusion always points forward in the list.  Conjugacy classes are
    numbered in order of first appearance and inherit the same property.
    """

    def __init__(self, group: GroupTable, subgroups: list[Subgroup]):
        self.group = group
        self.subgroups = subgroups
        self.index = {h.mask: i for i, h in enumerate(subgroups)}
        self._cache: dict = {}

        n = len(subgroups)
        s_class_of = [-1] * n
        members: list[list[int]] = []
        for i, h in enumerate(subgroups):
            if s_class_of[i] >= 0:
                continue
            c = len(members)
            orbit = sorted({self.index[conjugate_subgroup(group, h, s).mask] for s in group.elements})
            for j in orbit:
                s_class_of[j] = c
            members.append(orbit)
        self.s_class_of = tuple(s_class_of)
        self.s_class_members = tuple(tuple(m) for m in members)
        self.class_rep = tuple(m[0] for m in members)
        self.class_order = tuple(subgroups[r].order for r in self.class_rep)
        self.normalizer_order = tuple(normalizer(group, subgroups[r]).order for r in self.class_rep)
        self.weyl_order = tuple(nn // o for nn, o in zip(self.normalizer_order, self.class_order))

    def __len__(self) -> int:
        return len(self.subgroups)

    def __repr__(self) -> str:
        return f"SubgroupLattice({self.group.label or '?'}: {len(self)} subgroups, {self.n_classes} classes)"

    @property
    def n_classes(self) -> int:
        return len(self.s_class_members)

    def find(self, h: Subgroup) -> int:
        return self.index[h.mask]

    def leq(self, a: int, b: int) -> bool:
        return self.subgroups[a] <= self.subgroups[b]

    @cached_property
    def above(self) -> tuple[tuple[int, ...], ...]:
        """Strict up-sets, in list order."""
        n = len(self)
        return tuple(tuple(b for b in range(a + 1, n) if self.leq(a, b) and a != b) for a in range(n))

    @cached_property
    def normalizers(self) -> tuple[Subgroup, ...]:
        return tuple(normalizer(self.group, h) for h in self.subgroups)

    def class_label(self, c: int) -> str:
        return self.subgroups[self.class_rep[c]].label()


def enumerate_subgroups(g: GroupTable, cap: int = SUBGROUP_CAP) -> SubgroupLattice:
    """Layered construction: cyclic subgroups, then repeated joins ``<H, x>``."""
    found: dict[int, Subgroup] = {}
    for x in g.elements:
        c = subgroup_closure(g, [x])
        found.setdefault(c.mask, c)
    cyclic = sorted(found.values(), key=lambda h: h.order)
    layer = list(found.values())
    while layer:
        new: list[Subgroup] = []
        for h in layer:
            for c in cyclic:
                if c <= h:
                    continue
                j = subgroup_closure(g, h.generators + c.generators)
                if j.mask not in found:
                    if len(found) >= cap:
                        raise ResourceCapError(f"more than {cap} subgroups")
                    found[j.mask] = j
                    new.append(j)
        layer = new
    subgroups = sorted(found.values(), key=lambda h: (h.order, h.members))
    return SubgroupLattice(g, subgroups)


def _cached(l: SubgroupLattice, key, build):
    if key not in l._cache:
        l._cache[key] = build()
    return l._cache[key]


def incidence_matrix(l: SubgroupLattice) -> np.ndarray:
    def build():
        n = len(l)
        z = _linalg.zeros(n)
        for a in range(n):
            z[a, a] = 1
            for b in l.above[a]:
                z[a, b] = 1
        return z
    return _cached(l, "zeta", build)


def mobius_matrix(l: SubgroupLattice) -> np.ndarray:
    return _cached(l, "mu", lambda: _linalg.invert_upper(incidence_matrix(l)))


def strict_incidence_matrix(l: SubgroupLattice) -> np.ndarray:
    return incidence_matrix(l) - _linalg.identity(len(l))


def count_chains(l: SubgroupLattice, a: int, b: int, k: int, method: str = "matrix") -> int:
    """Number of chains ``a = a_0 < a_1 < ... < a_k = b``."""
    if k < 0:
        raise ValueError("chain length must be nonnegative")
    if method == "matrix":
        eta = strict_incidence_matrix(l)
        return int(np.linalg.matrix_power(eta, k)[a, b]) if k else int(a == b)
    if method == "dfs":
        return sum(1 for _ in iter_chains(l, a, b, k))
    raise ValueError(f"unknown method {method!r}")


def iter_chains(l: SubgroupLattice, a: int, b: int, k: int | None = None):
    """Yield strictly ascending chains from ``a`` to ``b`` (all lengths if ``k`` is None)."""
    target = l.subgroups[b]

    def rec(path):
        x = path[-1]
        n = len(path) - 1
        if x == b:
            if k is None or n == k:
                yield tuple(path)
            return
        if k is not None and n >= k:
            return
        for y in l.above[x]:
            if l.subgroups[y] <= target:
                path.append(y)
                yield from rec(path)
                path.pop()

    if l.leq(a, b):
        yield from rec([a])


def is_elab_extension(l: SubgroupLattice, q: int, r: int) -> bool:
    """``q < r``, ``q`` normal in ``r`` and ``r/q`` elementary abelian."""
    return is_elementary_abelian_section(l.group, l.subgroups[q], l.subgroups[r])


def is_elementary_abelian_section(g: GroupTable, q: Subgroup, r: Subgroup) -> bool:
    if not q < r:
        return False
    if any(g.conj(x, y) not in q for x in r.generators for y in q.generators):
        return False
    index = r.order // q.order
    p = next(d for d in range(2, index + 1) if index % d == 0)
    m = index
    while m % p == 0:
        m //= p
    if m != 1:
        return False
    inv = g.inverse
    for x in r.members:
        if g.power(x, p) not in q:
            return False
        for y in r.generators:
            comm = g.product(g.product(x, y), g.product(inv[x], inv[y]))
            if comm not in q:
                return False
    return True
