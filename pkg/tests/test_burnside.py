from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from burnside_fusion import (
    BurnsideElement,
    MarkVector,
    build_group,
    enumerate_subgroups,
    mark_matrix,
    mob_matrix,
    modified_mu_S,
    modified_zeta_S,
    multiply,
    psi,
    to_marks,
    to_orbits,
)
from burnside_fusion._linalg import identity, matmul
from burnside_fusion.burnside import weyl_diagonal
from burnside_fusion.group import conjugate_subgroup
import golden
from suite import TABLE_S, d8_names, group, sl23, submatrix


@pytest.fixture(scope="module")
def d8():
    return enumerate_subgroups(group(["(1,2,3,4)", "(1,3)"], 4, "D8"))


@pytest.fixture(scope="module")
def order(d8):
    names = d8_names(d8)
    return [names[k] for k in TABLE_S]


LATTICES = {
    "D8": lambda: enumerate_subgroups(group(["(1,2,3,4)", "(1,3)"], 4, "D8")),
    "Q8": lambda: enumerate_subgroups(sl23()[0]),
    "C4": lambda: enumerate_subgroups(group(["(1,2,3,4)"], 4)),
    "S4": lambda: enumerate_subgroups(group(["(1,2,3,4)", "(1,2)"], 4, "S4")),
    "C2^3": lambda: enumerate_subgroups(group(["(1,2)", "(3,4)", "(5,6)"], 6)),
}


def test_mark_golden(d8, order):
    assert submatrix(mark_matrix(d8), order) == golden.MARK


def test_mob_golden(d8, order):
    assert submatrix(mob_matrix(d8), order) == golden.MOB


def test_modified_golden(d8, order):
    assert submatrix(modified_mu_S(d8), order) == golden.MU_S
    assert submatrix(modified_zeta_S(d8), order) == golden.ZETA_S
    assert [d8.weyl_order[c] for c in order] == golden.WEYL_S


def test_trivial_group():
    l = enumerate_subgroups(build_group([], 1))
    assert mark_matrix(l).tolist() == [[1]]
    assert mob_matrix(l).tolist() == [[1]]


@pytest.mark.parametrize("name", list(LATTICES))
def test_matrix_identities(name):
    l = LATTICES[name]()
    n = l.n_classes
    mark, mob = mark_matrix(l), mob_matrix(l)
    w = weyl_diagonal(l)
    assert (matmul(mark, mob) == identity(n)).all()
    assert (matmul(modified_zeta_S(l), modified_mu_S(l)) == identity(n)).all()
    assert (matmul(modified_zeta_S(l), w) == mark).all()
    assert (matmul(np.diag([Fraction(1, v) for v in l.weyl_order]), modified_mu_S(l)) == mob).all()
    assert [mark[c, c] for c in range(n)] == list(l.weyl_order)
    assert [mob[c, c] for c in range(n)] == [Fraction(1, v) for v in l.weyl_order]


@pytest.mark.parametrize("name", list(LATTICES))
def test_mark_support_is_subconjugacy(name):
    l = LATTICES[name]()
    g = l.group
    mark = mark_matrix(l)
    for a in range(l.n_classes):
        q = l.subgroups[l.class_rep[a]]
        for b in range(l.n_classes):
            p = l.subgroups[l.class_rep[b]]
            sub = any(conjugate_subgroup(g, q, s) <= p for s in g.elements)
            assert bool(mark[a, b]) == sub


def test_marks_of_top_and_alpha_z(d8):
    names = d8_names(d8)
    top = BurnsideElement.basis(d8, d8.n_classes - 1)
    assert to_marks(top).values == (1,) * d8.n_classes
    phi = [0] * d8.n_classes
    phi[names["1"]] = 20
    for k in ("C2^1", "Z", "C2^2"):
        phi[names[k]] = 4
    x = to_orbits(MarkVector(d8, tuple(phi)))
    want = [0] * d8.n_classes
    want[names["Z"]], want[names["C2^1"]], want[names["C2^2"]] = 1, 2, 2
    assert list(x.coeffs) == want


def test_idempotents_are_rational(d8):
    x = to_orbits(MarkVector.idempotent(d8, 0))
    assert not x.is_integral
    assert x.coeffs[0] == Fraction(1, 8)


def test_round_trip(d8):
    rng = np.random.default_rng(7)
    for _ in range(100):
        v = tuple(int(a) for a in rng.integers(-20, 21, d8.n_classes))
        x = BurnsideElement(d8, v)
        assert to_orbits(to_marks(x)).coeffs == v


# -- multiplication ---------------------------------------------------------------

def s_set_product(l, a, b):
    """Oracle: build S/P x S/Q as an honest S-set and split it into orbits."""
    g = l.group
    p = l.subgroups[l.class_rep[a]]
    q = l.subgroups[l.class_rep[b]]

    def cosets(h):
        return sorted({frozenset(g.product(s, x) for x in h.members) for s in g.elements}, key=sorted)

    points = list(product(cosets(p), cosets(q)))
    act = lambda s, c: frozenset(g.product(s, x) for x in c)
    seen, out = set(), [0] * l.n_classes
    for pt in points:
        if pt in seen:
            continue
        orbit = {(act(s, pt[0]), act(s, pt[1])) for s in g.elements}
        seen |= orbit
        stab = [s for s in g.elements if (act(s, pt[0]), act(s, pt[1])) == pt]
        out[l.s_class_of[l.index[sum(1 << s for s in stab)]]] += 1
    return tuple(out)


@pytest.mark.parametrize("name", ["D8", "Q8", "S4"])
def test_products_match_s_set_oracle(name):
    l = LATTICES[name]()
    for a in range(l.n_classes):
        for b in range(l.n_classes):
            prod = multiply(BurnsideElement.basis(l, a), BurnsideElement.basis(l, b))
            assert prod.coeffs == s_set_product(l, a, b)


def test_product_examples(d8):
    names = d8_names(d8)
    basis = lambda k: BurnsideElement.basis(d8, names[k])
    one = BurnsideElement.basis(d8, d8.n_classes - 1)
    x = BurnsideElement(d8, (3, -1, 0, 2, 5, 0, 1, 4))
    assert one * x == x
    assert basis("1") * basis("1") == 8 * basis("1")
    # 2 x 2 = 4 points, one free orbit of S/Z
    assert basis("V4^1") * basis("C4") == basis("Z")


@pytest.mark.parametrize("name", ["D8", "Q8", "S4"])
def test_mark_map_is_a_ring_map(name):
    l = LATTICES[name]()
    rng = np.random.default_rng(11)
    for _ in range(100):
        x = BurnsideElement(l, tuple(int(a) for a in rng.integers(-5, 6, l.n_classes)))
        y = BurnsideElement(l, tuple(int(a) for a in rng.integers(-5, 6, l.n_classes)))
        assert to_marks(x * y) == to_marks(x) * to_marks(y)


# -- obstruction map -----------------------------------------------------------------

@pytest.mark.parametrize("name", list(LATTICES))
def test_psi_kills_image_of_marks(name):
    l = LATTICES[name]()
    for c in range(l.n_classes):
        assert psi(to_marks(BurnsideElement.basis(l, c))).is_zero()


def test_psi_of_first_idempotent(d8):
    v = psi(MarkVector.idempotent(d8, 0))
    assert v.residues[0] == 1 and v.moduli[0] == 8
    assert not v.is_zero()


def test_cokernel_order_is_det_mark(d8):
    mark = mark_matrix(d8)
    det = 1
    for c in range(d8.n_classes):
        det *= mark[c, c]
    assert det == int(np.prod(d8.weyl_order)) == 1024


@pytest.mark.parametrize("name", ["D8", "Q8", "C4"])
def test_psi_is_surjective(name):
    # closure of the images of the ghost basis inside prod Z/|W_S P|
    l = LATTICES[name]()
    moduli = l.weyl_order
    gens = [psi(MarkVector.idempotent(l, c)).residues for c in range(l.n_classes)]
    reached = {(0,) * len(moduli)}
    frontier = list(reached)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b, m in zip(v, g, moduli))
                if w not in reached:
                    reached.add(w)
                    nxt.append(w)
        frontier = nxt
    assert len(reached) == int(np.prod(moduli))
