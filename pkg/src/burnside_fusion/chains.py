"""Broken chains: enumeration, alternating sums, sparkling/drab
classification and the type-1/type-2 cancellation pairing.

Everything here runs on a :class:`ChainPoset`, a subgroup poset decorated with
S-classes, F-classes and chosen representatives.  The subgroup lattice of a
fusion system is one instance; the twisted-diagonal poset of the bisets module
is another.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .group import GroupTable, Subgroup, conjugate_subgroup
from .lattice import is_elementary_abelian_section

FILTERS = ("all", "drab", "elab", "drab+elab")
_FILTER_ALIASES = {"drab_only": "drab", "elab_only": "elab"}


class CancellationError(RuntimeError):
    """The sparkling-chain pairing failed to be a perfect matching."""


class ChainPoset:
    """Nodes are subgroups of ``group`` listed in non-decreasing order.

    ``s_class[x]`` and ``f_class[x]`` classify nodes; ``f_rep[c]`` is the
    chosen representative node of F-class ``c``; ``weyl[x]`` is the Weyl
    order of ``x`` in ``group``.
    """

    def __init__(self, group: GroupTable, nodes: Sequence[Subgroup], above: Sequence[Sequence[int]],
                 s_class: Sequence[int], f_class: Sequence[int], f_rep: Sequence[int],
                 weyl: Sequence[int], labels: Sequence[str] | None = None):
        self.group = group
        self.nodes = tuple(nodes)
        self.above = tuple(tuple(a) for a in above)
        self.s_class = tuple(s_class)
        self.f_class = tuple(f_class)
        self.f_rep = tuple(f_rep)
        self.weyl = tuple(weyl)
        self.index = {h.mask: i for i, h in enumerate(self.nodes)}
        self.order = tuple(h.order for h in self.nodes)
        self._labels = labels

    def __len__(self) -> int:
        return len(self.nodes)

    def rep(self, x: int) -> int:
        return self.f_rep[self.f_class[x]]

    def is_star(self, x: int) -> bool:
        """S-conjugate to the chosen representative of its F-class."""
        return self.s_class[x] == self.s_class[self.rep(x)]

    def label(self, x: int) -> str:
        if self._labels is not None:
            return self._labels[x]
        return self.nodes[x].label()

    def conjugate(self, s: int, x: int) -> int:
        return self.index[conjugate_subgroup(self.group, self.nodes[x], s).mask]

    def conjugator_to_rep(self, x: int) -> int:
        """Least element index ``s`` with ``s x s^-1`` the representative."""
        target = self.nodes[self.rep(x)].mask
        h = self.nodes[x]
        g = self.group
        for s in g.elements:
            if all(target >> g.conj(s, y) & 1 for y in h.generators):
                return s
        raise ValueError(f"node {self.label(x)} is not S-conjugate to its representative")

    def elab(self, a: int, b: int) -> bool:
        return is_elementary_abelian_section(self.group, self.nodes[a], self.nodes[b])


def lattice_poset(f) -> ChainPoset:
    """The subgroup poset of S decorated by a fusion system."""
    cache = f.lattice._cache
    key = ("chainposet", f.classes, f.rep)
    if key not in cache:
        l = f.lattice
        cache[key] = ChainPoset(
            l.group, l.subgroups, l.above, l.s_class_of,
            [f.f_class(i) for i in range(len(l))], f.rep,
            [l.weyl_order[c] for c in l.s_class_of])
    return cache[key]


@dataclass(frozen=True)
class BrokenChain:
    """Segments ``(sigma_0, ..., sigma_k)`` of node indices."""

    segments: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.segments) - 1

    @property
    def total_length(self) -> int:
        return self.k + sum(len(s) - 1 for s in self.segments)

    @property
    def sign(self) -> int:
        return -1 if self.total_length % 2 else 1

    @property
    def is_tethered(self) -> bool:
        return len(self.segments[0]) == 1

    @property
    def start(self) -> int:
        return self.segments[0][0]

    @property
    def end(self) -> int:
        return self.segments[-1][-1]

    def render(self, cp: ChainPoset) -> str:
        """Zigzag text: ``<`` inside a segment, ``~`` across a break."""
        return " ~ ".join(" < ".join(cp.label(x) for x in seg) for seg in self.segments)


@dataclass(frozen=True)
class SparkleClass:
    kind: str  # "drab", "type1" or "type2"
    witness: tuple[int, int] | None = None


def _canonical_filter(filter: str) -> str:
    filter = _FILTER_ALIASES.get(filter, filter)
    if filter not in FILTERS:
        raise ValueError(f"unknown chain filter {filter!r}; expected one of {FILTERS}")
    return filter


class _Enumerator:
    """Memoised suffix construction for broken chains ending in one F-class."""

    def __init__(self, cp: ChainPoset, target: int):
        self.cp = cp
        self.target = target
        self.max_order = cp.order[cp.f_rep[target]]
        self._end: dict[int, list] = {}
        self._start: dict[int, list] = {}

    def end(self, x: int) -> list[tuple[tuple[int, ...], tuple]]:
        """Completions once the current segment has reached ``x`` and may close.

        Each completion is (further nodes of this segment, later segments).
        """
        if x in self._end:
            return self._end[x]
        cp = self.cp
        out: list = []
        if cp.f_class[x] == self.target:
            out.append(((), ()))
        for y in cp.above[x]:
            if cp.order[y] <= self.max_order:
                out.extend(((y,) + t, segs) for t, segs in self.end(y))
        if cp.order[x] < self.max_order:
            out.extend(((), (seg,) + segs) for seg, segs in self.start(cp.rep(x)))
        self._end[x] = out
        return out

    def start(self, r: int) -> list[tuple[tuple[int, ...], tuple]]:
        """Segments opened at representative ``r`` (length at least one)."""
        if r in self._start:
            return self._start[r]
        cp = self.cp
        out: list = []
        for y in cp.above[r]:
            if cp.order[y] <= self.max_order:
                out.extend(((r, y) + t, segs) for t, segs in self.end(y))
        self._start[r] = out
        return out


def broken_chains(cp: ChainPoset, q: int, target: int, tethered: bool = False) -> list[BrokenChain]:
    """All broken chains from node ``q`` to F-class ``target``, in DFS order.

    With ``tethered`` only chains whose leading segment is trivial are kept.
    """
    en = _Enumerator(cp, target)
    out = []
    if tethered:
        if cp.f_class[q] == target:
            out.append(BrokenChain(((q,),)))
        if cp.order[q] < en.max_order:
            for seg, segs in en.start(cp.rep(q)):
                out.append(BrokenChain(((q,), seg) + segs))
        return out
    for t, segs in en.end(q):
        out.append(BrokenChain(((q,) + t,) + segs))
    return out


def signed_sum(cp: ChainPoset, q: int, target: int, tethered: bool = False, elab: bool = False) -> int:
    """``sum (-1)^len`` over broken chains without materialising them.

    ``elab`` restricts every nontrivial segment to an elementary abelian
    normal section between its endpoints.
    """
    max_order = cp.order[cp.f_rep[target]]
    end_memo: dict = {}
    start_memo: dict = {}

    def closes(a, x):
        return not elab or a == x or cp.elab(a, x)

    def end(x, a):
        key = (x, a if elab else None)
        if key in end_memo:
            return end_memo[key]
        total = 0
        ok = closes(a, x)
        if ok and cp.f_class[x] == target:
            total += 1
        for y in cp.above[x]:
            if cp.order[y] <= max_order:
                total -= end(y, a)
        if ok and cp.order[x] < max_order:
            total -= start(cp.rep(x))
        end_memo[key] = total
        return total

    def start(r):
        if r not in start_memo:
            start_memo[r] = -sum(end(y, r) for y in cp.above[r] if cp.order[y] <= max_order)
        return start_memo[r]

    if tethered:
        total = 1 if cp.f_class[q] == target else 0
        if cp.order[q] < max_order:
            total -= start(cp.rep(q))
        return total
    return end(q, q)


def is_well_formed(cp: ChainPoset, chain: BrokenChain, target: int) -> bool:
    """Structural check of the four defining conditions."""
    segs = chain.segments
    for i, seg in enumerate(segs):
        if i >= 1 and (len(seg) < 2 or seg[0] != cp.rep(seg[0])):
            return False
        for a, b in zip(seg, seg[1:]):
            if not cp.nodes[a] < cp.nodes[b]:
                return False
        if i < len(segs) - 1 and cp.f_class[seg[-1]] != cp.f_class[segs[i + 1][0]]:
            return False
    return cp.f_class[chain.end] == target


def elab_ok(cp: ChainPoset, chain: BrokenChain) -> bool:
    return all(len(seg) == 1 or cp.elab(seg[0], seg[-1]) for seg in chain.segments)


def star_positions(cp: ChainPoset, chain: BrokenChain) -> list[tuple[int, int, int]]:
    """``(i, j, type)`` for every star-group of the chain."""
    out = []
    k = chain.k
    for i, seg in enumerate(chain.segments):
        n = len(seg) - 1
        for j, x in enumerate(seg):
            if (i >= 1 and j == 0) or (i == k and j == n):
                continue
            if 0 < j < n or (i == 0 and j == 0 and n > 0):
                kind = 1
            else:
                kind = 2  # j == n and i < k
            if cp.is_star(x):
                out.append((i, j, kind))
    return out


def classify(cp: ChainPoset, chain: BrokenChain) -> SparkleClass:
    stars = star_positions(cp, chain)
    if not stars:
        return SparkleClass("drab")
    # ties on order cannot occur (orders strictly grow between star positions);
    # position order breaks them anyway
    i, j, kind = min(stars, key=lambda s: (cp.order[chain.segments[s[0]][s[1]]], s[0], s[1]))
    return SparkleClass(f"type{kind}", (i, j))


def partner(cp: ChainPoset, chain: BrokenChain) -> BrokenChain:
    """Split (type 1) or merge (type 2) at the smallest star-group."""
    cls = classify(cp, chain)
    if cls.kind == "drab":
        raise ValueError("drab chains have no partner")
    i, j = cls.witness
    segs = chain.segments
    r = segs[i][j]
    r_star = cp.rep(r)
    s = cp.conjugator_to_rep(r)
    if cls.kind == "type1":
        head, tail = segs[i][:j + 1], segs[i][j + 1:]
        moved = (r_star,) + tuple(cp.conjugate(s, b) for b in tail)
        return BrokenChain(segs[:i] + (head, moved) + segs[i + 1:])
    s_inv = cp.group.inverse[s]
    nxt = segs[i + 1]
    if nxt[0] != r_star:
        raise CancellationError("segment after a type-2 star-group does not start at its representative")
    merged = segs[i] + tuple(cp.conjugate(s_inv, c) for c in nxt[1:])
    return BrokenChain(segs[:i] + (merged,) + segs[i + 2:])


@dataclass
class CancellationReport:
    drab: list[BrokenChain]
    n_type1: int
    n_type2: int
    pairs: list[tuple[BrokenChain, BrokenChain]]

    @property
    def n_drab(self) -> int:
        return len(self.drab)


def cancellation_report(cp: ChainPoset, q: int, target: int) -> CancellationReport:
    chains = broken_chains(cp, q, target)
    present = set(chains)
    drab, pairs = [], []
    n1 = n2 = 0
    for c in chains:
        cls = classify(cp, c)
        if cls.kind == "drab":
            drab.append(c)
            continue
        other = partner(cp, c)
        if other not in present:
            raise CancellationError(f"partner of {c.render(cp)} is not a broken chain to the target")
        ocls = classify(cp, other)
        if {cls.kind, ocls.kind} != {"type1", "type2"}:
            raise CancellationError(f"{c.render(cp)} and its partner have the same type")
        if abs(c.total_length - other.total_length) != 1:
            raise CancellationError(f"partner of {c.render(cp)} does not differ in length by one")
        if partner(cp, other) != c:
            raise CancellationError(f"pairing is not an involution at {c.render(cp)}")
        if cls.kind == "type1":
            n1 += 1
            pairs.append((c, other))
        else:
            n2 += 1
    if n1 != n2:
        raise CancellationError(f"{n1} type-1 chains against {n2} type-2 chains")
    return CancellationReport(drab, n1, n2, pairs)


# -- fusion-system front end -------------------------------------------------

def _chain_filter(cp: ChainPoset, chains, filter: str):
    filter = _canonical_filter(filter)
    if "drab" in filter:
        chains = [c for c in chains if classify(cp, c).kind == "drab"]
    if "elab" in filter:
        chains = [c for c in chains if elab_ok(cp, c)]
    return chains


def enumerate_broken(f, q: int, p_class: int, filter: str = "all") -> list[BrokenChain]:
    """Broken chains linking subgroup ``q`` to F-class ``p_class``."""
    cp = lattice_poset(f)
    return _chain_filter(cp, broken_chains(cp, q, p_class), filter)


def enumerate_tethered(f, q_rep: int, p: int) -> list[BrokenChain]:
    """Tethered broken chains from representative ``q_rep`` to the F-class of subgroup ``p``."""
    if not f.is_rep(q_rep):
        raise ValueError(f"{f.lattice.subgroups[q_rep].label()} is not a chosen representative")
    cp = lattice_poset(f)
    return broken_chains(cp, q_rep, f.f_class(p), tethered=True)


def coeff_via_chains(f, q: int, p_class: int, filter: str = "all") -> Fraction:
    """Number of ``[S/q]``-orbits in alpha_P from the alternating chain sum.

    Rational on purpose: mixing the drab and elab filters is not a valid
    formula and can give non-integers.
    """
    cp = lattice_poset(f)
    total = sum(c.sign for c in enumerate_broken(f, q, p_class, filter))
    return Fraction(f.rep_weyl[p_class] * total, cp.weyl[q])


def fixed_via_tethered(f, q_rep: int, p_class: int) -> int:
    """``|alpha_P^{Q*}|`` from tethered chains."""
    if not f.is_rep(q_rep):
        raise ValueError(f"{f.lattice.subgroups[q_rep].label()} is not a chosen representative")
    cp = lattice_poset(f)
    return f.rep_weyl[p_class] * sum(c.sign for c in broken_chains(cp, q_rep, p_class, tethered=True))


def sparkle_class(f, chain: BrokenChain) -> SparkleClass:
    return classify(lattice_poset(f), chain)


def verify_cancellation(f, q: int, p_class: int) -> CancellationReport:
    return cancellation_report(lattice_poset(f), q, p_class)
