"""Minimal characteristic bisets for V4 in A4 and D8 in A6.

    python3 demos/characteristic_biset.py
"""
from pathlib import Path

from burnside_fusion.bisets import (
    check_op_containment,
    minimal_biset,
    op_subgroup,
    verify_characteristic,
)
from burnside_fusion.documents import fusion_from_document, load_document

DATA = Path(__file__).resolve().parent / "data"

if __name__ == "__main__":
    for name in ("v4_a4.yaml", "d8_a6.yaml"):
        f = fusion_from_document(load_document(DATA / name, "fusion"), base=DATA)
        lam = minimal_biset(f)
        op = op_subgroup(f)
        rep = verify_characteristic(f, lam)
        print(f"{f.lattice.group.label}: {len(lam.poset)} twisted diagonals, "
              f"{lam.poset.n_classes} SxS-classes, O_{f.prime}(F) = {op.label()}")
        for d, v in lam.terms():
            print(f"  {v} x [SxS / {d.label(f)}]")
        print(f"  |Lambda|/|S| = {lam.size_over_S()}, characteristic: {rep.ok}, "
              f"domains contain O_p(F): {check_op_containment(f, lam, op)}")
        doubled = verify_characteristic(f, 2 * lam)
        print(f"  doubling keeps stability ({doubled.stable}) but |2 Lambda|/|S| = {doubled.size_over_S}\n")
