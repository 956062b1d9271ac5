"""Command line front end.

    burnside-fusion fmark --group d8.yaml --ambient a6.yaml --prime 2
    burnside-fusion alpha --fusion d8_a6.yaml --method chains --filter drab
    burnside-fusion chains --fusion d8_a6.yaml --q "<(1,3)(5,6)>" --p "<(1,2,3,4)(5,6), (1,3)(5,6)>"
    burnside-fusion diff a.json b.json

Exit status: 0 success, 1 invariant diagnostic (or a non-empty diff),
2 usage or input error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bisets import check_op_containment, minimal_biset, op_subgroup, verify_characteristic
from .burnside import mark_matrix, mob_matrix, modified_mu_S, modified_zeta_S, weyl_diagonal
from .chains import (
    CancellationError,
    FILTERS,
    classify,
    coeff_via_chains,
    enumerate_broken,
    fixed_via_tethered,
    lattice_poset,
    verify_cancellation,
)
from .documents import (
    SpecError,
    decode_rational,
    dumps,
    embed,
    fusion_from_document,
    group_from_document,
    load_artifact,
    load_document,
    partition_blocks,
    subgroup_index,
    table,
)
from .fusion import (
    AlphaDiagnostic,
    FusionError,
    FusionSystem,
    alpha,
    f_matrices,
    fusion_from_ambient,
    fusion_from_partition,
    is_f_stable,
    trivial_fusion,
)
from .group import ELEMENT_CAP, ResourceCapError
from .lattice import enumerate_subgroups

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class InvariantFailure(Exception):
    def __init__(self, artifact: dict, message: str):
        super().__init__(message)
        self.artifact = artifact


# -- building the fusion system ---------------------------------------------

def load_fusion(args) -> FusionSystem:
    strict = not args.allow_non_sylow
    if args.fusion:
        return fusion_from_document(args.fusion, Path(args.fusion).parent, strict, args.element_cap)
    if not args.group:
        raise SpecError("one of --fusion or --group is required")
    doc = load_document(args.group, "group")
    s = group_from_document(doc, "group", args.element_cap)
    mode = args.mode or ("ambient" if args.ambient else "partition")
    if mode == "ambient":
        if not args.ambient:
            raise SpecError("--mode ambient needs --ambient")
        g = group_from_document(args.ambient, "ambient", args.element_cap)
        return fusion_from_ambient(embed(s, g), args.prime, strict=strict)
    if args.ambient:
        raise SpecError("--ambient cannot be combined with --mode partition")
    l = enumerate_subgroups(s)
    classes = doc.get("classes") if isinstance(doc, dict) else None
    if classes is None:
        return trivial_fusion(l)
    return fusion_from_partition(l, partition_blocks(l, classes, "group.classes"), args.prime)


def _header(kind: str, f: FusionSystem) -> dict:
    s = f.lattice.group
    return {
        "kind": kind,
        "group": {"name": s.label, "order": s.order},
        "prime": f.prime,
        "mode": "ambient" if f.embedding is not None else "partition",
        "f_classes": [[f.lattice.class_label(c) for c in block] for block in f.classes],
    }


def _s_labels(f):
    return [f.lattice.class_label(c) for c in range(f.lattice.n_classes)]


def _f_labels(f):
    return [f.class_label(c) for c in range(f.n_classes)]


# -- commands -------------------------------------------------------------------

def cmd_marks(args) -> dict:
    f = load_fusion(args)
    l = f.lattice
    labels = _s_labels(f)
    out = _header("marks", f)
    out["tables"] = {
        "mark": table(labels, labels, mark_matrix(l)),
        "mob": table(labels, labels, mob_matrix(l)),
        "zeta_S": table(labels, labels, modified_zeta_S(l)),
        "mu_S": table(labels, labels, modified_mu_S(l)),
        "weyl": table(labels, labels, weyl_diagonal(l)),
    }
    return out


def cmd_fmark(args) -> dict:
    f = load_fusion(args)
    labels = _f_labels(f)
    out = _header("fmark", f)
    out["method"] = args.method
    if args.method == "chains":
        n = f.n_classes
        m = [[fixed_via_tethered(f, f.rep[q], p) if q <= p else 0 for p in range(n)] for q in range(n)]
        out["tables"] = {"f_mark": table(labels, labels, m)}
        return out
    fm = f_matrices(f)
    out["tables"] = {
        "f_mark": table(labels, labels, fm.f_mark),
        "f_mob": table(labels, labels, fm.f_mob),
        "mu_F": table(labels, labels, fm.mu_tilde_F),
        "zeta_F": table(labels, labels, fm.zeta_tilde_F),
        "weyl_F": table(labels, labels, fm.weyl_F),
    }
    return out


def cmd_alpha(args) -> dict:
    f = load_fusion(args)
    l = f.lattice
    out = _header("alpha", f)
    out["method"] = args.method
    if args.method == "chains":
        out["filter"] = args.filter
        rows = [[coeff_via_chains(f, l.class_rep[q], p, args.filter) for q in range(l.n_classes)]
                for p in range(f.n_classes)]
    else:
        rows = [list(alpha(f, p).coeffs) for p in range(f.n_classes)]
    out["tables"] = {"alpha": table(_f_labels(f), _s_labels(f), rows)}
    bad = sum(1 for row in rows for v in row if Fraction(v).denominator != 1 or v < 0)
    if bad:
        raise InvariantFailure(out, f"{bad} coefficients are not nonnegative integers")
    return out


def _find(f: FusionSystem, label: str, flag: str) -> int:
    return subgroup_index(f.lattice, label, flag)


def cmd_chains(args) -> dict:
    f = load_fusion(args)
    if args.q is None or args.p is None:
        raise SpecError("chains needs --q and --p")
    q = _find(f, args.q, "--q")
    p_class = f.f_class(_find(f, args.p, "--p"))
    cp = lattice_poset(f)
    chains = enumerate_broken(f, q, p_class, args.filter)
    out = _header("chains", f)
    out.update({
        "q": cp.label(q),
        "p": f.class_label(p_class),
        "filter": args.filter,
        "chains": [
            {
                "segments": [[cp.label(x) for x in seg] for seg in c.segments],
                "length": c.total_length,
                "sign": c.sign,
                "class": classify(cp, c).kind,
                "text": c.render(cp),
            }
            for c in chains
        ],
        "signed_sum": sum(c.sign for c in chains),
        "coefficient": list(_pair(coeff_via_chains(f, q, p_class, args.filter))),
    })
    if args.filter == "all":
        rep = verify_cancellation(f, q, p_class)
        out["cancellation"] = {"type1": rep.n_type1, "type2": rep.n_type2, "drab": rep.n_drab}
    return out


def _pair(x):
    x = Fraction(x)
    return x.numerator, x.denominator


def cmd_biset(args) -> dict:
    f = load_fusion(args)
    lam = minimal_biset(f)
    rep = verify_characteristic(f, lam)
    op = op_subgroup(f)
    out = _header("biset", f)
    out["terms"] = [
        {
            "domain": f.lattice.subgroups[d.domain].label(),
            "morphism": [list(pair) for pair in d.generator_images(f)],
            "coefficient": list(_pair(c)),
        }
        for d, c in lam.terms()
    ]
    out["size_over_S"] = list(_pair(rep.size_over_S))
    out["report"] = {
        "twisted_diagonals": rep.twisted,
        "stable": rep.stable,
        "prime_to_p": rep.prime_to_p,
        "failures": rep.failures,
    }
    out["O_p"] = op.label()
    out["O_p_containment"] = check_op_containment(f, lam, op)
    if not (rep.ok and out["O_p_containment"]):
        raise InvariantFailure(out, "characteristic biset check failed")
    return out


def cmd_verify(args) -> dict:
    f = load_fusion(args)
    l = f.lattice
    fm = f_matrices(f).f_mark
    checks = []

    def check(name, ok):
        checks.append({"check": name, "ok": bool(ok)})

    for p in range(f.n_classes):
        try:
            x = alpha(f, p)
        except AlphaDiagnostic as exc:
            check(f"alpha[{f.class_label(p)}] integral and nonnegative: {exc}", False)
            continue
        check(f"alpha[{f.class_label(p)}] integral and nonnegative", True)
        check(f"alpha[{f.class_label(p)}] F-stable", is_f_stable(f, x))
        check(f"alpha[{f.class_label(p)}] delta on representatives",
              all(x.coeffs[l.s_class_of[r]] == int(qc == p) for qc, r in enumerate(f.rep)))
        for c in range(l.n_classes):
            q = l.class_rep[c]
            vals = {flt: coeff_via_chains(f, q, p, flt) for flt in ("all", "drab", "elab")}
            check(f"chains agree with matrices at ({l.class_label(c)}, {f.class_label(p)})",
                  all(v == x.coeffs[c] for v in vals.values()))
        for qc, r in enumerate(f.rep):
            if qc <= p:
                check(f"tethered fixed points at ({f.class_label(qc)}, {f.class_label(p)})",
                      fixed_via_tethered(f, r, p) == fm[qc, p])
    if f.embedding is not None and not args.skip_biset:
        lam = minimal_biset(f)
        rep = verify_characteristic(f, lam)
        check("biset: twisted diagonals", rep.twisted)
        check("biset: F-stable on both sides", rep.stable)
        check("biset: |Omega|/|S| prime to p", rep.prime_to_p)
        check("biset: O_p containment", check_op_containment(f, lam))
    out = _header("verify", f)
    out["checks"] = checks
    out["ok"] = all(c["ok"] for c in checks)
    if not out["ok"]:
        raise InvariantFailure(out, "verification failed")
    return out


def cmd_diff(args) -> dict:
    a, b = load_artifact(args.a), load_artifact(args.b)
    if a["kind"] != b["kind"]:
        raise SpecError(f"cannot compare a {a['kind']!r} artifact with a {b['kind']!r} artifact")
    diffs = []
    for name in sorted(set(a["tables"]) & set(b["tables"])):
        ta, tb = a["tables"][name], b["tables"][name]
        va = {(r, c): v for r, row in zip(ta["rows"], ta["entries"]) for c, v in zip(ta["cols"], row)}
        vb = {(r, c): v for r, row in zip(tb["rows"], tb["entries"]) for c, v in zip(tb["cols"], row)}
        for key in sorted(set(va) | set(vb)):
            x, y = va.get(key), vb.get(key)
            if x != y:
                diffs.append({
                    "table": name, "row": key[0], "col": key[1],
                    "a": None if x is None else list(_pair(x)),
                    "b": None if y is None else list(_pair(y)),
                })
    out = {"kind": "diff", "a": str(args.a), "b": str(args.b),
           "compared": sorted(set(a["tables"]) & set(b["tables"])), "differences": diffs}
    if diffs:
        raise InvariantFailure(out, f"{len(diffs)} differing entries")
    return out


# -- text rendering ---------------------------------------------------------------

def _fmt(pair) -> str:
    x = decode_rational(pair) if isinstance(pair, list) else pair
    return str(x)


def render_text(out: dict) -> str:
    lines = [f"# {out['kind']}"]
    if "group" in out:
        lines.append(f"S = {out['group']['name'] or '?'} (order {out['group']['order']}), p = {out['prime']}")
    for name, t in out.get("tables", {}).items():
        lines.append(f"\n{name}:")
        if t["cols"] != t["rows"]:
            lines.append("  columns: " + "; ".join(f"{i}={c}" for i, c in enumerate(t["cols"])))
        rows = [[_fmt(v) for v in row] for row in t["entries"]]
        width = max([len(v) for row in rows for v in row] + [1])
        for label, row in zip(t["rows"], rows):
            lines.append("  " + " ".join(v.rjust(width) for v in row) + f"   {label}")
    for c in out.get("chains", []):
        lines.append(f"{c['sign']:+d}  {c['class']:<5}  {c['text']}")
    if "chains" in out:
        num, den = out["coefficient"]
        lines.append(f"signed sum {out['signed_sum']}, coefficient {Fraction(num, den)}")
    for t in out.get("terms", []):
        m = "id" if all(a == b for a, b in t["morphism"]) else ", ".join(f"{a}->{b}" for a, b in t["morphism"])
        lines.append(f"{Fraction(*t['coefficient'])} x [SxS / D({t['domain']}; {m})]")
    if "report" in out:
        lines.append(f"|Omega|/|S| = {Fraction(*out['size_over_S'])}; O_p(F) = {out['O_p']}")
        lines.extend(f"  {k}: {v}" for k, v in out["report"].items() if k != "failures")
    for c in out.get("checks", []):
        lines.append(f"{'PASS' if c['ok'] else 'FAIL'}  {c['check']}")
    for d in out.get("differences", []):
        lines.append(f"{d['table']}[{d['row']}, {d['col']}]: {_fmt(d['a'])} != {_fmt(d['b'])}")
    if out["kind"] == "diff" and not out["differences"]:
        lines.append("no differences")
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------

COMMANDS = {
    "marks": cmd_marks, "fmark": cmd_fmark, "alpha": cmd_alpha, "chains": cmd_chains,
    "biset": cmd_biset, "verify": cmd_verify, "diff": cmd_diff,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burnside-fusion", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("data", "text"), default="data")
    common.add_argument("--out", type=Path, help="write the artifact here instead of stdout")
    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--fusion", help="fusion document (YAML/JSON)")
    inputs.add_argument("--group", help="group document for S")
    inputs.add_argument("--ambient", help="group document for G containing S")
    inputs.add_argument("--prime", type=int)
    inputs.add_argument("--mode", choices=("ambient", "partition"))
    inputs.add_argument("--allow-non-sylow", action="store_true",
                        help="warn instead of failing when S is not Sylow in G")
    inputs.add_argument("--element-cap", type=int, default=ELEMENT_CAP, help="largest group order to build")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("marks", parents=[common, inputs], help="table of marks and Möbius data of S")
    for name, help_ in (("fmark", "marks of the F-stable basis"), ("alpha", "orbit decompositions")):
        sp = sub.add_parser(name, parents=[common, inputs], help=help_)
        sp.add_argument("--method", choices=("matrix", "chains"), default="matrix")
        if name == "alpha":
            sp.add_argument("--filter", choices=FILTERS, default="all")
    sp = sub.add_parser("chains", parents=[common, inputs], help="list broken chains for one pair")
    sp.add_argument("--q", help="start subgroup, by label or generators")
    sp.add_argument("--p", help="target subgroup (its F-class is used)")
    sp.add_argument("--filter", choices=FILTERS, default="all")
    sub.add_parser("biset", parents=[common, inputs], help="minimal characteristic biset")
    sp = sub.add_parser("verify", parents=[common, inputs], help="check all invariants")
    sp.add_argument("--skip-biset", action="store_true")
    sp = sub.add_parser("diff", parents=[common], help="compare two artifacts exactly")
    sp.add_argument("a", type=Path)
    sp.add_argument("b", type=Path)
    return parser


def _emit(out: dict, args) -> None:
    text = render_text(out) if args.format == "text" else dumps(out)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            out = COMMANDS[args.command](args)
    except InvariantFailure as exc:
        _emit(exc.artifact, args)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (AlphaDiagnostic, CancellationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ResourceCapError as exc:
        print(f"error: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, FusionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(out, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
