"""Twisted diagonals in S x S, the minimal characteristic biset and O_p(F).

A morphism ``phi: P -> S`` of ``F_S(G)`` is stored through its graph, the
twisted diagonal ``Delta(P, phi) = {(phi(s), s) : s in P}`` inside ``S x S``.
Everything below a twisted diagonal is again one, so broken chains ending at
``Delta(S, id)`` never leave the diagonal poset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import ChainPoset, signed_sum
from .fusion import FusionError, FusionSystem
from .group import (
    ResourceCapError,
    Subgroup,
    conjugate_subgroup,
    cycle_string,
    direct_product,
    normalizer,
    pair_index,
    subgroup_closure,
    transporter_count,
)

NODE_CAP = 20000


class UnsupportedModeError(FusionError):
    """The operation needs morphisms, i.e. a fusion system with an ambient group."""


def _require_ambient(f: FusionSystem) -> None:
    if f.embedding is None:
        raise UnsupportedModeError("twisted diagonals need a fusion system given by an ambient group")


@dataclass(frozen=True)
class TwistedDiagonal:
    """The graph of ``phi: P -> S``; ``images[i]`` is phi of ``P.members[i]``."""

    domain: int
    images: tuple[int, ...]

    def as_dict(self, f: FusionSystem) -> dict[int, int]:
        return dict(zip(f.lattice.subgroups[self.domain].members, self.images))

    def is_identity(self, f: FusionSystem) -> bool:
        return self.images == f.lattice.subgroups[self.domain].members

    def image_subgroup(self, f: FusionSystem) -> int:
        l = f.lattice
        mask = 0
        for y in self.images:
            mask |= 1 << y
        return l.index[mask]

    def generator_images(self, f: FusionSystem) -> list[tuple[str, str]]:
        s = f.lattice.group
        phi = self.as_dict(f)
        return [(cycle_string(s.perms[x]), cycle_string(s.perms[phi[x]]))
                for x in f.lattice.subgroups[self.domain].generators]

    def label(self, f: FusionSystem) -> str:
        p = f.lattice.subgroups[self.domain].label()
        if self.is_identity(f):
            return f"D({p}, id)"
        pairs = ", ".join(f"{a}->{b}" for a, b in self.generator_images(f))
        return f"D({p}, {pairs})"


def enumerate_morphisms(f: FusionSystem, p: int) -> list[TwistedDiagonal]:
    """All distinct conjugation maps ``P -> S`` induced by the ambient group.

    The identity comes first; the rest follow the element order of ``G``.
    """
    _require_ambient(f)
    e = f.embedding
    g = e.ambient
    back = e.preimage
    members = f.lattice.subgroups[p].members
    ambient_members = [e.image_of[x] for x in members]
    seen: set[tuple[int, ...]] = set()
    out = []
    for t in g.elements:
        images = []
        for y in ambient_members:
            z = back.get(g.conj(t, y))
            if z is None:
                break
            images.append(z)
        else:
            key = tuple(images)
            if key not in seen:
                seen.add(key)
                out.append(TwistedDiagonal(p, key))
    return out


class DiagonalPoset:
    """All twisted diagonals of ``f`` as subgroups of ``S x S``.

    Nodes are sorted like a subgroup lattice (order, then member list).
    ``ff_class_of[x]`` is the F-class of the domain of node ``x``; the
    representative of each class is ``Delta(P*, id)``.
    """

    def __init__(self, f: FusionSystem, cap: int = NODE_CAP):
        _require_ambient(f)
        self.fusion = f
        l = f.lattice
        s = l.group
        ss = direct_product(s, s, f"{s.label or 'S'}x{s.label or 'S'}")
        self.product_group = ss
        pair_of = [None] * ss.order
        for a in s.elements:
            for b in s.elements:
                pair_of[pair_index(ss, s, s, a, b)] = (a, b)
        self.pair_of = tuple(pair_of)

        found: dict[int, TwistedDiagonal] = {}
        for p in range(len(l)):
            for d in enumerate_morphisms(f, p):
                mask = 0
                for x, y in zip(l.subgroups[p].members, d.images):
                    mask |= 1 << pair_index(ss, s, s, y, x)
                found.setdefault(mask, d)
                if len(found) > cap:
                    raise ResourceCapError(f"more than {cap} twisted diagonals")
        order = sorted(found, key=lambda m: (m.bit_count(), Subgroup(ss, m).members))
        self.diagonals = tuple(found[m] for m in order)
        self.nodes = tuple(Subgroup(ss, m) for m in order)
        self.index = {m: i for i, m in enumerate(order)}
        n = len(self.nodes)
        self.above = tuple(
            tuple(b for b in range(a + 1, n) if self.nodes[a] < self.nodes[b]) for a in range(n))

        s_class = [-1] * n
        members: list[list[int]] = []
        for i, h in enumerate(self.nodes):
            if s_class[i] >= 0:
                continue
            orbit = sorted({self.index[conjugate_subgroup(ss, h, t).mask] for t in ss.elements})
            for j in orbit:
                s_class[j] = len(members)
            members.append(orbit)
        self.s_class_of = tuple(s_class)
        self.s_class_members = tuple(tuple(m) for m in members)
        self.class_rep = tuple(m[0] for m in members)

        self.ff_class_of = tuple(f.f_class(d.domain) for d in self.diagonals)
        self.rep = tuple(self.identity_node(r) for r in f.rep)
        norm = [normalizer(ss, self.nodes[r]).order for r in self.class_rep]
        self.normalizer_order = tuple(norm[c] for c in s_class)
        self.weyl = tuple(no // h.order for no, h in zip(self.normalizer_order, self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"DiagonalPoset({len(self)} diagonals, {self.n_classes} SxS-classes)"

    @property
    def n_classes(self) -> int:
        return len(self.s_class_members)

    def identity_node(self, p: int) -> int:
        s = self.fusion.lattice.group
        mask = 0
        for x in self.fusion.lattice.subgroups[p].members:
            mask |= 1 << pair_index(self.product_group, s, s, x, x)
        return self.index[mask]

    def find(self, d: TwistedDiagonal) -> int:
        s = self.fusion.lattice.group
        mask = 0
        for x, y in zip(self.fusion.lattice.subgroups[d.domain].members, d.images):
            mask |= 1 << pair_index(self.product_group, s, s, y, x)
        return self.index[mask]

    def leq(self, a: int, b: int) -> bool:
        return self.nodes[a] <= self.nodes[b]

    def label(self, x: int) -> str:
        return self.diagonals[x].label(self.fusion)

    def chain_poset(self) -> ChainPoset:
        return ChainPoset(self.product_group, self.nodes, self.above, self.s_class_of,
                          self.ff_class_of, self.rep, self.weyl,
                          labels=[self.label(x) for x in range(len(self))])


def build_diagonal_poset(f: FusionSystem) -> DiagonalPoset:
    cache = f.lattice._cache
    key = ("diagonals", f.classes, f.rep, id(f.embedding))
    if key not in cache:
        cache[key] = DiagonalPoset(f)
    return cache[key]


@dataclass(frozen=True)
class CharacteristicBiset:
    """An (S,S)-biset as coefficients over SxS-classes of twisted diagonals."""

    poset: DiagonalPoset
    coeffs: tuple

    def __rmul__(self, k: int) -> CharacteristicBiset:
        return CharacteristicBiset(self.poset, tuple(k * c for c in self.coeffs))

    def support(self) -> list[int]:
        return [c for c, v in enumerate(self.coeffs) if v]

    def terms(self) -> list[tuple[TwistedDiagonal, object]]:
        dp = self.poset
        return [(dp.diagonals[dp.class_rep[c]], self.coeffs[c]) for c in self.support()]

    def size_over_S(self):
        """``|Omega| / |S|``."""
        dp = self.poset
        s = dp.fusion.lattice.group.order
        total = sum(Fraction(v * s, dp.nodes[dp.class_rep[c]].order) for c, v in enumerate(self.coeffs))
        return int(total) if total.denominator == 1 else total

    def fixed_points(self, x: int):
        """``|Omega^X|`` for node ``x`` via the marks of the SxS-orbits."""
        dp = self.poset
        ss = dp.product_group
        h = dp.nodes[x]
        total = 0
        for c, v in enumerate(self.coeffs):
            if v:
                k = dp.nodes[dp.class_rep[c]]
                if k.order >= h.order:
                    total += v * Fraction(transporter_count(ss, h, k), k.order)
        return int(total) if total.denominator == 1 else total


def minimal_biset(f: FusionSystem) -> CharacteristicBiset:
    """``Lambda_F``: the irreducible stable element at ``Delta(S, id)``.

    Coefficients come from broken chains in the diagonal poset, scaled by the
    ratio of SxS-Weyl orders.
    """
    dp = build_diagonal_poset(f)
    cp = dp.chain_poset()
    top = f.n_classes - 1
    w_top = dp.weyl[dp.rep[top]]
    coeffs = []
    for c in range(dp.n_classes):
        x = dp.class_rep[c]
        v = Fraction(w_top * signed_sum(cp, x, top), dp.weyl[x])
        coeffs.append(int(v) if v.denominator == 1 else v)
    return CharacteristicBiset(dp, tuple(coeffs))


@dataclass
class CharacteristicReport:
    twisted: bool
    stable: bool
    prime_to_p: bool
    size_over_S: object
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.twisted and self.stable and self.prime_to_p


def verify_characteristic(f: FusionSystem, omega: CharacteristicBiset) -> CharacteristicReport:
    """Check the three defining properties of a characteristic biset."""
    dp = omega.poset
    failures = []
    twisted = True
    for c in omega.support():
        h = dp.nodes[dp.class_rep[c]]
        right = {dp.pair_of[x][1] for x in h.members}
        if len(right) != h.order:
            twisted = False
            failures.append(f"orbit {dp.label(dp.class_rep[c])} is not a twisted diagonal")

    stable = True
    fixed = [omega.fixed_points(x) for x in range(len(dp))]
    for x, d in enumerate(dp.diagonals):
        left = fixed[dp.identity_node(d.domain)]
        right = fixed[dp.identity_node(d.image_subgroup(f))]
        if not left == fixed[x] == right:
            stable = False
            failures.append(f"fixed points differ at {dp.label(x)}: {left}, {fixed[x]}, {right}")

    size = omega.size_over_S()
    prime_to_p = isinstance(size, int) and size % f.prime != 0
    if not prime_to_p:
        failures.append(f"|Omega|/|S| = {size} is divisible by {f.prime}")
    return CharacteristicReport(twisted, stable, prime_to_p, size, failures)


def op_subgroup(f: FusionSystem) -> Subgroup:
    """The largest subgroup normal in F, by brute force over all morphisms."""
    _require_ambient(f)
    l = f.lattice
    e = f.embedding
    g = e.ambient
    s_mask = e.image_mask
    morphisms = {q: {d.images for d in enumerate_morphisms(f, q)} for q in range(len(l))}
    candidates = [r for c, r in enumerate(l.class_rep) if len(l.s_class_members[c]) == 1]
    for p in sorted(candidates, key=lambda r: (-l.subgroups[r].order, r)):
        p_image = e.image(l.subgroups[p])
        stab = [t for t in g.elements
                if all(p_image >> g.conj(t, e.image_of[x]) & 1 for x in l.subgroups[p].generators)]
        if _is_normal_in_f(f, p, stab, morphisms, s_mask):
            return l.subgroups[p]
    return l.group.trivial()


def _is_normal_in_f(f, p, stab, morphisms, s_mask) -> bool:
    l = f.lattice
    e = f.embedding
    g = e.ambient
    back = e.preimage
    pm = l.subgroups[p].mask
    for q, maps in morphisms.items():
        qp = [e.image_of[x] for x in _join(l, q, pm).members]
        reachable = set()
        for t in stab:
            if all(s_mask >> g.conj(t, y) & 1 for y in qp):
                reachable.add(tuple(back[g.conj(t, e.image_of[x])] for x in l.subgroups[q].members))
        if not maps <= reachable:
            return False
    return True


def _join(l, q: int, p_mask: int) -> Subgroup:
    sub = Subgroup(l.group, p_mask)
    return subgroup_closure(l.group, l.subgroups[q].generators + sub.generators)


def check_op_containment(f: FusionSystem, omega: CharacteristicBiset, op: Subgroup | None = None) -> bool:
    """Every diagonal in the support has domain containing ``O_p(F)``."""
    op = op if op is not None else op_subgroup(f)
    l = f.lattice
    return all(op <= l.subgroups[d.domain] for d, _ in omega.terms())


def full_lattice_biset(f: FusionSystem) -> dict[int, object]:
    """Oracle for :func:`minimal_biset` through the whole subgroup lattice of ``S x S``.

    Runs the matrix pipeline on ``F_{SxS}(GxG)`` and returns the coefficients
    of ``alpha_{Delta(S, id)}`` keyed by SxS-class of the diagonal poset.
    Raises if a non-diagonal orbit shows up.  Only sensible for tiny S.
    """
    from .fusion import alpha, fusion_from_ambient
    from .group import Embedding
    from .lattice import enumerate_subgroups

    dp = build_diagonal_poset(f)
    e = f.embedding
    ss = dp.product_group
    gg = direct_product(e.ambient, e.ambient)
    big = fusion_from_ambient(Embedding.by_permutations(ss, gg), f.prime, lattice=enumerate_subgroups(ss))
    bl = big.lattice
    top = big.f_class(bl.index[dp.nodes[dp.rep[-1]].mask])
    x = alpha(big, top)
    out = {}
    for c, v in enumerate(x.coeffs):
        if not v:
            continue
        hits = [dp.s_class_of[dp.index[bl.subgroups[j].mask]] for j in bl.s_class_members[c]
                if bl.subgroups[j].mask in dp.index]
        if not hits:
            raise ValueError(f"orbit {bl.class_label(c)} is not a twisted diagonal")
        out[hits[0]] = v
    return out
