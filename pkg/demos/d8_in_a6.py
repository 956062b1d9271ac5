"""The Sylow 2-subgroup D8 of A6: table of marks, FMark and the alpha basis.

    python3 demos/d8_in_a6.py
"""
from pathlib import Path

from burnside_fusion import alpha, f_matrices, mark_matrix
from burnside_fusion.documents import fusion_from_document, load_document

DATA = Path(__file__).resolve().parent / "data"


def show(title, m, rows, cols=None):
    cols = rows if cols is None else cols
    print(f"\n{title}")
    width = max(len(str(v)) for row in m for v in row) + 1
    for label, i in zip(rows, range(len(m))):
        print("".join(f"{str(m[i][j]):>{width}}" for j in range(len(cols))), " ", label)


if __name__ == "__main__":
    doc = load_document(DATA / "d8_a6.yaml", "fusion")
    f = fusion_from_document(doc, base=DATA)
    l = f.lattice
    s_labels = [l.class_label(c) for c in range(l.n_classes)]
    f_labels = [f.class_label(c) for c in range(f.n_classes)]

    print(f"S = {l.group.label} of order {l.group.order} inside A6, p = {f.prime}")
    print(f"{l.n_classes} S-classes of subgroups fall into {f.n_classes} F-classes:")
    for c, block in enumerate(f.classes):
        print(f"  {f_labels[c]:<28} <- {', '.join(s_labels[b] for b in block)}")

    show("table of marks of S", mark_matrix(l).tolist(), s_labels)
    fm = f_matrices(f)
    show("FMark: |alpha_P^Q| for Q (rows) and P (columns)", fm.f_mark.tolist(), f_labels)

    print("\nirreducible F-stable sets")
    for p in range(f.n_classes):
        x = alpha(f, p)
        terms = " + ".join(f"{v}[S/{s_labels[c]}]" if v > 1 else f"[S/{s_labels[c]}]"
                           for c, v in enumerate(x.coeffs) if v)
        print(f"  alpha_{f_labels[p]} = {terms}")
