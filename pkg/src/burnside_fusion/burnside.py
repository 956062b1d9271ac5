"""The Burnside ring A(S): table of marks, coordinate changes between orbit
and fixed-point form, double-coset multiplication and the obstruction map."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _linalg
from .group import conjugate_subgroup, normalizer, subgroup_closure, transporter_count
from .lattice import SubgroupLattice, _cached, mobius_matrix


@dataclass(frozen=True)
class BurnsideElement:
    """``sum c_P [S/P]`` with one coefficient per S-conjugacy class."""

    lattice: SubgroupLattice
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.n_classes:
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "coeffs", tuple(_linalg.normalize(c) for c in self.coeffs))

    @classmethod
    def basis(cls, l: SubgroupLattice, c: int) -> BurnsideElement:
        return cls(l, tuple(int(i == c) for i in range(l.n_classes)))

    @classmethod
    def zero(cls, l: SubgroupLattice) -> BurnsideElement:
        return cls(l, (0,) * l.n_classes)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        return BurnsideElement(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k) -> BurnsideElement:
        return BurnsideElement(self.lattice, tuple(k * a for a in self.coeffs))

    def __mul__(self, other: BurnsideElement) -> BurnsideElement:
        return multiply(self, other)


@dataclass(frozen=True)
class MarkVector:
    """A superclass function: one value per S-conjugacy class."""

    lattice: SubgroupLattice
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.lattice.n_classes:
            raise ValueError("mark vector has wrong length")
        object.__setattr__(self, "values", tuple(_linalg.normalize(v) for v in self.values))

    @classmethod
    def idempotent(cls, l: SubgroupLattice, c: int) -> MarkVector:
        return cls(l, tuple(int(i == c) for i in range(l.n_classes)))

    def __mul__(self, other: MarkVector) -> MarkVector:
        return MarkVector(self.lattice, tuple(a * b for a, b in zip(self.values, other.values)))


def mark_matrix(l: SubgroupLattice) -> np.ndarray:
    """``Mark[Q, P] = |N_S(Q, P)| / |P|`` over S-classes."""
    def build():
        n = l.n_classes
        m = _linalg.zeros(n)
        for qc in range(n):
            q = l.subgroups[l.class_rep[qc]]
            for pc in range(qc, n):
                p = l.subgroups[l.class_rep[pc]]
                if q.order <= p.order:
                    m[qc, pc] = transporter_count(l.group, q, p) // p.order
        return m
    return _cached(l, "mark", build)


def mob_matrix(l: SubgroupLattice) -> np.ndarray:
    return _cached(l, "mob", lambda: _linalg.invert_upper(mark_matrix(l)))


def weyl_diagonal(l: SubgroupLattice) -> np.ndarray:
    w = _linalg.zeros(l.n_classes)
    for c, v in enumerate(l.weyl_order):
        w[c, c] = v
    return w


def modified_zeta_S(l: SubgroupLattice) -> np.ndarray:
    """Number of subgroups in class ``[P]`` containing a fixed ``Q``."""
    def build():
        n = l.n_classes
        z = _linalg.zeros(n)
        for qc in range(n):
            q = l.class_rep[qc]
            for pc in range(n):
                z[qc, pc] = sum(1 for p in l.s_class_members[pc] if l.leq(q, p))
        return z
    return _cached(l, "zeta_S", build)


def modified_mu_S(l: SubgroupLattice) -> np.ndarray:
    """``sum_{P' ~_S P} mu(Q, P')``; the inverse of :func:`modified_zeta_S`."""
    def build():
        mu = mobius_matrix(l)
        n = l.n_classes
        m = _linalg.zeros(n)
        for qc in range(n):
            q = l.class_rep[qc]
            for pc in range(n):
                m[qc, pc] = sum(mu[q, p] for p in l.s_class_members[pc])
        return m
    return _cached(l, "mu_S", build)


def to_marks(x: BurnsideElement) -> MarkVector:
    v = mark_matrix(x.lattice).dot(np.array(x.coeffs, dtype=object))
    return MarkVector(x.lattice, tuple(v))


def to_orbits(v: MarkVector) -> BurnsideElement:
    """Inverse of :func:`to_marks`.  The result may carry Fractions; check
    ``is_integral`` before treating it as an honest S-set."""
    c = mob_matrix(v.lattice).dot(np.array(v.values, dtype=object))
    return BurnsideElement(v.lattice, tuple(c))


def _double_coset_product(l: SubgroupLattice, pc: int, qc: int) -> tuple[int, ...]:
    g = l.group
    p = l.subgroups[l.class_rep[pc]]
    q = l.subgroups[l.class_rep[qc]]
    out = [0] * l.n_classes
    seen = 0
    for s in g.elements:
        if seen >> s & 1:
            continue
        for a in p.members:
            for b in q.members:
                seen |= 1 << g.product(g.product(a, s), b)
        stab = p & conjugate_subgroup(g, q, s)
        out[l.s_class_of[l.find(stab)]] += 1
    return tuple(out)


def product_table(l: SubgroupLattice) -> dict[tuple[int, int], tuple[int, ...]]:
    def build():
        n = l.n_classes
        tab = {}
        for a in range(n):
            for b in range(a, n):
                tab[a, b] = tab[b, a] = _double_coset_product(l, a, b)
        return tab
    return _cached(l, "products", build)


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Bilinear extension of ``[S/P][S/Q] = sum_{PsQ} [S/(P ∩ sQs^-1)]``."""
    if x.lattice is not y.lattice:
        raise ValueError("elements live over different lattices")
    l = x.lattice
    tab = product_table(l)
    out = [0] * l.n_classes
    for a, ca in enumerate(x.coeffs):
        if not ca:
            continue
        for b, cb in enumerate(y.coeffs):
            if not cb:
                continue
            for c, n in enumerate(tab[a, b]):
                if n:
                    out[c] += ca * cb * n
    return BurnsideElement(l, tuple(out))


@dataclass(frozen=True)
class ObstructionVector:
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.residues)


def _psi_terms(l: SubgroupLattice) -> list[list[int]]:
    """Per class ``[P]``: classes of ``<s>P`` over coset reps of ``N_S P / P``."""
    def build():
        g = l.group
        terms = []
        for c in range(l.n_classes):
            p = l.subgroups[l.class_rep[c]]
            n = normalizer(g, p)
            seen = 0
            row = []
            for s in n.members:
                if seen >> s & 1:
                    continue
                for x in p.members:
                    seen |= 1 << g.product(s, x)
                sp = subgroup_closure(g, p.generators + (s,))
                row.append(l.s_class_of[l.find(sp)])
            terms.append(row)
        return terms
    return _cached(l, "psi", build)


def psi(v: MarkVector) -> ObstructionVector:
    l = v.lattice
    residues = []
    for c, row in enumerate(_psi_terms(l)):
        total = sum(Fraction(v.values[t]) for t in row)
        if total.denominator != 1:
            raise ValueError("obstruction map needs an integral mark vector")
        residues.append(int(total) % l.weyl_order[c])
    return ObstructionVector(tuple(residues), tuple(l.weyl_order))

