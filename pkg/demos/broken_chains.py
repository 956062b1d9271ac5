"""Broken chains from C2 to D8 in the fusion system of A6.

Lists the ten chains with their signs and sparkle classes, shows how the
type-1 and type-2 chains cancel in pairs, and why the drab and elementary
abelian filters cannot be combined.

    python3 demos/broken_chains.py
"""
from pathlib import Path

from burnside_fusion.chains import (
    coeff_via_chains,
    enumerate_broken,
    lattice_poset,
    sparkle_class,
    verify_cancellation,
)
from burnside_fusion.documents import fusion_from_document, load_document, subgroup_index

DATA = Path(__file__).resolve().parent / "data"

if __name__ == "__main__":
    f = fusion_from_document(load_document(DATA / "d8_a6.yaml", "fusion"), base=DATA)
    cp = lattice_poset(f)
    q = subgroup_index(f.lattice, "<(1,3)(5,6)>", "q")
    top = f.n_classes - 1

    chains = enumerate_broken(f, q, top)
    print(f"{len(chains)} broken chains from {cp.label(q)} to {f.class_label(top)}")
    for c in chains:
        print(f"  {c.sign:+d}  len {c.total_length}  {sparkle_class(f, c).kind:<5}  {c.render(cp)}")

    rep = verify_cancellation(f, q, top)
    print(f"\n{rep.n_type1} type-1 chains cancel against {rep.n_type2} type-2 chains:")
    for a, b in rep.pairs:
        print(f"  {a.render(cp)}\n    <-> {b.render(cp)}")
    print("drab survivors:")
    for c in rep.drab:
        print(f"  {c.sign:+d}  {c.render(cp)}")

    print("\ncoefficient of [S/C2] in alpha_S:")
    for filt in ("all", "drab", "elab", "drab+elab"):
        print(f"  {filt:<10} {coeff_via_chains(f, q, top, filt)}")
