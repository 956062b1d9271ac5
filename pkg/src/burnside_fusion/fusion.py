"""Saturated fusion systems on a p-group S, the matrices of marks of A(F)
and the irreducible F-stable basis elements."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _linalg
from .burnside import BurnsideElement, MarkVector, mob_matrix, to_marks, to_orbits
from .group import Embedding, is_p_group, is_prime, is_sylow, prime_of_p_group
from .lattice import SubgroupLattice, enumerate_subgroups, mobius_matrix


class FusionError(ValueError):
    """Malformed fusion data (bad partition, non-p-group, non-Sylow)."""


class AlphaDiagnostic(ArithmeticError):
    """An alpha element came out non-integral or negative.

    Only possible for a class partition that is not a saturated fusion system.
    """

    def __init__(self, message: str, f_class: int, s_class: int, value):
        super().__init__(message)
        self.f_class = f_class
        self.s_class = s_class
        self.value = value


class FusionSystem:
    """F-conjugacy classes of subgroups of S with chosen representatives.

    ``classes[c]`` lists the S-classes fused into F-class ``c``; ``rep[c]`` is
    the chosen fully normalized subgroup (a lattice index).  F-classes are
    sorted by subgroup order, then by representative.
    """

    def __init__(self, lattice: SubgroupLattice, blocks: Iterable[Iterable[int]], prime: int | None,
                 embedding: Embedding | None = None):
        self.lattice = lattice
        self.prime = prime
        self.embedding = embedding
        l = lattice
        entries = []
        for block in blocks:
            block = tuple(sorted(block))
            members = [i for c in block for i in l.s_class_members[c]]
            best = max(l.normalizer_order[c] for c in block)
            rep = min(i for c in block for i in l.s_class_members[c]
                      if l.normalizer_order[l.s_class_of[i]] == best)
            entries.append((rep, block, members))
        entries.sort()
        self.rep = tuple(e[0] for e in entries)
        self.classes = tuple(e[1] for e in entries)
        self.class_subgroups = tuple(tuple(sorted(e[2])) for e in entries)
        f_class_of = [-1] * l.n_classes
        for c, block in enumerate(self.classes):
            for s in block:
                f_class_of[s] = c
        self.f_class_of = tuple(f_class_of)
        self.class_order = tuple(l.subgroups[r].order for r in self.rep)
        self.rep_weyl = tuple(l.weyl_order[l.s_class_of[r]] for r in self.rep)

    def __repr__(self) -> str:
        return f"FusionSystem({self.lattice.group.label or '?'}: {self.n_classes} F-classes)"

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def f_class(self, subgroup: int) -> int:
        return self.f_class_of[self.lattice.s_class_of[subgroup]]

    def rep_of(self, subgroup: int) -> int:
        return self.rep[self.f_class(subgroup)]

    def is_rep(self, subgroup: int) -> bool:
        return self.rep_of(subgroup) == subgroup

    def class_label(self, c: int) -> str:
        return self.lattice.subgroups[self.rep[c]].label()

    def is_trivial(self) -> bool:
        return all(len(b) == 1 for b in self.classes)


def fusion_from_ambient(e: Embedding, p: int | None = None, strict: bool = True,
                        lattice: SubgroupLattice | None = None) -> FusionSystem:
    """The fusion system F_S(G) of an embedding ``S <= G``.

    With ``strict=False`` a non-Sylow embedding only warns.
    """
    s_group, g = e.source, e.ambient
    if p is None:
        p = prime_of_p_group(s_group.order) or 2
    if not is_prime(p):
        raise FusionError(f"{p} is not prime")
    if not is_p_group(s_group.order, p):
        raise FusionError(f"{s_group.label or 'S'} (order {s_group.order}) is not a {p}-group")
    if not is_sylow(e, p):
        msg = f"{s_group.label or 'S'} is not a Sylow {p}-subgroup of {g.label or 'G'}"
        if strict:
            raise FusionError(msg)
        warnings.warn(msg, stacklevel=2)
    l = lattice if lattice is not None else enumerate_subgroups(s_group)
    if l.group is not s_group:
        raise FusionError("lattice does not belong to the embedded group")

    by_image = {e.image(h): i for i, h in enumerate(l.subgroups)}
    parent = list(range(l.n_classes))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c, r in enumerate(l.class_rep):
        image = [e.image_of[x] for x in l.subgroups[r].members]
        for t in g.elements:
            mask = 0
            for x in image:
                mask |= 1 << g.conj(t, x)
            j = by_image.get(mask)
            if j is not None:
                a, b = find(c), find(l.s_class_of[j])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for c in range(l.n_classes):
        blocks.setdefault(find(c), []).append(c)
    return FusionSystem(l, blocks.values(), p, e)


def fusion_from_partition(l: SubgroupLattice, classes: Sequence[Sequence[int]],
                          prime: int | None = None) -> FusionSystem:
    """A fusion system given directly as a partition of S-classes.

    Saturation is taken on faith; see :class:`AlphaDiagnostic`.
    """
    seen: set[int] = set()
    for block in classes:
        if not block:
            raise FusionError("empty block in class partition")
        orders = {l.class_order[c] for c in block}
        if len(orders) != 1:
            raise FusionError(f"block {sorted(block)} mixes subgroup orders {sorted(orders)}")
        for c in block:
            if not 0 <= c < l.n_classes:
                raise FusionError(f"unknown S-class {c}")
            if c in seen:
                raise FusionError(f"S-class {c} appears in two blocks")
            seen.add(c)
    missing = set(range(l.n_classes)) - seen
    if missing:
        raise FusionError(f"S-classes {sorted(missing)} are not covered by the partition")
    if prime is None:
        prime = prime_of_p_group(l.group.order)
    return FusionSystem(l, classes, prime)


def trivial_fusion(l: SubgroupLattice) -> FusionSystem:
    return fusion_from_partition(l, [[c] for c in range(l.n_classes)])


@dataclass(frozen=True)
class FMatrices:
    f_mob: np.ndarray
    f_mark: np.ndarray
    mu_tilde_F: np.ndarray
    zeta_tilde_F: np.ndarray
    weyl_F: np.ndarray


def f_matrices(f: FusionSystem) -> FMatrices:
    """Column-sum the Möbius data over F-classes and keep representative rows."""
    cache = f.lattice._cache
    key = ("fmat", f.classes, f.rep)
    if key in cache:
        return cache[key]
    l = f.lattice
    mob = mob_matrix(l)
    mu = mobius_matrix(l)
    n = f.n_classes
    f_mob = _linalg.zeros(n)
    mu_f = _linalg.zeros(n)
    weyl = _linalg.zeros(n)
    for qc, q in enumerate(f.rep):
        row = l.s_class_of[q]
        weyl[qc, qc] = f.rep_weyl[qc]
        for pc in range(n):
            f_mob[qc, pc] = sum(Fraction(mob[row, s]) for s in f.classes[pc])
            mu_f[qc, pc] = sum(mu[q, p] for p in f.class_subgroups[pc])
    f_mob = _linalg.normalized(f_mob)
    out = FMatrices(
        f_mob=f_mob,
        f_mark=_linalg.invert_upper(f_mob),
        mu_tilde_F=mu_f,
        zeta_tilde_F=_linalg.invert_upper(mu_f),
        weyl_F=weyl,
    )
    cache[key] = out
    return out


def alpha_marks(f: FusionSystem, p_class: int) -> MarkVector:
    """Fixed-point vector of alpha_P: the ``p_class`` column of FMark spread over S-classes."""
    fm = f_matrices(f).f_mark
    return MarkVector(f.lattice, tuple(fm[f.f_class_of[c], p_class] for c in range(f.lattice.n_classes)))


def alpha(f: FusionSystem, p_class: int, check: bool = True) -> BurnsideElement:
    """The irreducible F-stable element for F-class ``p_class`` in orbit form.

    Raises :class:`AlphaDiagnostic` when a coefficient is non-integral or
    negative (unless ``check`` is False).
    """
    if not 0 <= p_class < f.n_classes:
        raise IndexError(f"F-class {p_class} out of range")
    x = to_orbits(alpha_marks(f, p_class))
    if check:
        for c, v in enumerate(x.coeffs):
            if not isinstance(v, int) or v < 0:
                label = f.lattice.class_label(c)
                raise AlphaDiagnostic(
                    f"alpha for F-class {f.class_label(p_class)} has coefficient {v} at [S/{label}]"
                    " (input is probably not a saturated fusion system)",
                    p_class, c, v)
    return x


def alpha_table(f: FusionSystem) -> list[BurnsideElement]:
    return [alpha(f, c) for c in range(f.n_classes)]


def is_f_stable(f: FusionSystem, x: BurnsideElement) -> bool:
    marks = to_marks(x).values
    return all(len({marks[s] for s in block}) == 1 for block in f.classes)
