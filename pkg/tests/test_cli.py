import json
import subprocess
import sys
from fractions import Fraction

import pytest

from burnside_fusion.cli import main
from burnside_fusion.documents import (
    SpecError,
    decode_rational,
    decode_table,
    dumps,
    encode_rational,
    fusion_from_document,
    group_from_document,
    load_artifact,
    load_document,
    parse_cycles,
    save_artifact,
    subgroup_index,
)
import golden
from suite import DATA, TABLE_F, TABLE_S, fusion

D8A6 = str(DATA / "d8_a6.yaml")

# labels of the S-classes of D8 acting on six points
LABEL = {
    "1": "1",
    "C2^1": "<(1,3)(5,6)>",
    "Z": "<(1,3)(2,4)>",
    "C2^2": "<(1,4)(2,3)>",
    "V4^1": "<(1,3)(5,6), (1,3)(2,4)>",
    "C4": "<(1,2,3,4)(5,6)>",
    "V4^2": "<(1,3)(2,4), (1,4)(2,3)>",
    "D8": "<(1,2,3,4)(5,6), (1,3)(5,6)>",
}


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    return code, (load_artifact(out) if out.exists() else None)


def lookup(t, rows, cols):
    r = [t["rows"].index(LABEL[k]) for k in rows]
    c = [t["cols"].index(LABEL[k]) for k in cols]
    return [[t["entries"][i][j] for j in c] for i in r]


def test_fmark_golden(tmp_path):
    code, art = run(tmp_path, "fmark", "--fusion", D8A6)
    assert code == 0
    t = art["tables"]
    assert lookup(t["f_mark"], TABLE_F, TABLE_F) == golden.FMARK
    assert lookup(t["f_mob"], TABLE_F, TABLE_F) == golden.FMOB
    assert lookup(t["mu_F"], TABLE_F, TABLE_F) == golden.MU_F


def test_marks_golden(tmp_path):
    code, art = run(tmp_path, "marks", "--group", str(DATA / "d8.yaml"), "--prime", "2")
    assert code == 0
    assert lookup(art["tables"]["mark"], TABLE_S, TABLE_S) == golden.MARK
    assert lookup(art["tables"]["mob"], TABLE_S, TABLE_S) == golden.MOB


def test_alpha_golden(tmp_path):
    code, art = run(tmp_path, "alpha", "--fusion", D8A6)
    assert code == 0
    t = art["tables"]["alpha"]
    for p, terms in golden.ALPHA.items():
        row = t["entries"][t["rows"].index(LABEL[p])]
        assert {c: v for c, v in zip(t["cols"], row) if v} == {LABEL[q]: v for q, v in terms.items()}


def test_trivial_group_is_all_ones(tmp_path):
    (tmp_path / "t.yaml").write_text("{name: T, domain: 1, generators: []}\n")
    (tmp_path / "f.yaml").write_text("mode: ambient\nprime: 3\ngroup: t.yaml\nambient: t.yaml\n")
    f = str(tmp_path / "f.yaml")
    for cmd, names in [("marks", ("mark", "mob", "zeta_S", "mu_S", "weyl")),
                       ("fmark", ("f_mark", "f_mob", "mu_F", "zeta_F", "weyl_F")),
                       ("alpha", ("alpha",))]:
        code, art = run(tmp_path, cmd, "--fusion", f)
        assert code == 0
        for n in names:
            assert art["tables"][n]["entries"] == [[1]]
    code, art = run(tmp_path, "biset", "--fusion", f)
    assert code == 0 and len(art["terms"]) == 1 and art["size_over_S"] == [1, 1]


def test_chains_listing(tmp_path):
    code, art = run(tmp_path, "chains", "--fusion", D8A6, "--q", LABEL["C2^1"], "--p", LABEL["D8"])
    assert code == 0
    assert len(art["chains"]) == 10 and art["signed_sum"] == 0
    assert sorted(c["class"] for c in art["chains"]).count("drab") == 2
    assert all(c["segments"][0][0] == LABEL["C2^1"] for c in art["chains"])


def test_biset_and_verify(tmp_path):
    code, art = run(tmp_path, "biset", "--fusion", D8A6)
    assert code == 0
    assert art["size_over_S"] == [13, 1] and art["O_p"] == "1" and art["O_p_containment"]
    code, art = run(tmp_path, "verify", "--fusion", D8A6)
    assert code == 0 and art["ok"] and all(c["ok"] for c in art["checks"])


def test_byte_identical_runs(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "burnside_fusion.cli", "alpha", "--fusion", D8A6,
                        "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    main(["alpha", "--fusion", D8A6, "--format", "text", "--out", str(tmp_path / "a.txt")])
    main(["alpha", "--fusion", D8A6, "--format", "text", "--out", str(tmp_path / "b.txt")])
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_artifact_round_trip(tmp_path):
    code, art = run(tmp_path, "fmark", "--fusion", D8A6)
    save_artifact(art, tmp_path / "again.json")
    assert load_artifact(tmp_path / "again.json") == art
    assert (tmp_path / "again.json").read_text() == (tmp_path / "out.json").read_text()
    for x in (0, 5, -3, Fraction(-5, 8), Fraction(1, 2)):
        assert decode_rational(encode_rational(x)) == x
    raw = json.loads((tmp_path / "out.json").read_text())
    assert decode_table(raw["tables"]["f_mob"])["entries"][0][0] == Fraction(1, 8)


def test_diff_matrix_against_chains(tmp_path):
    for cmd, extra in [("fmark", []), ("alpha", [])]:
        run(tmp_path, cmd, "--fusion", D8A6, name="m.json")
        run(tmp_path, cmd, "--fusion", D8A6, "--method", "chains", *extra, name="c.json")
        code, art = run(tmp_path, "diff", str(tmp_path / "m.json"), str(tmp_path / "c.json"), name="d.json")
        assert code == 0 and art["differences"] == [] and art["compared"]


def test_diff_shows_combined_filter_failure(tmp_path):
    run(tmp_path, "alpha", "--fusion", D8A6, name="m.json")
    code, _ = run(tmp_path, "alpha", "--fusion", D8A6, "--method", "chains", "--filter", "drab+elab", name="c.json")
    assert code == 1
    code, art = run(tmp_path, "diff", str(tmp_path / "m.json"), str(tmp_path / "c.json"), name="d.json")
    assert code == 1
    got = {(d["row"], d["col"]): (decode_rational(d["a"]), decode_rational(d["b"])) for d in art["differences"]}
    assert got == {(LABEL["D8"], LABEL["C2^1"]): (0, Fraction(1, 2)),
                   (LABEL["D8"], LABEL["C2^2"]): (0, Fraction(1, 2))}


def test_partition_and_ambient_agree(tmp_path):
    run(tmp_path, "fmark", "--fusion", D8A6, name="a.json")
    code, _ = run(tmp_path, "fmark", "--fusion", str(DATA / "d8_a6_partition.yaml"), name="p.json")
    assert code == 0
    code, art = run(tmp_path, "diff", str(tmp_path / "a.json"), str(tmp_path / "p.json"), name="d.json")
    assert code == 0 and art["differences"] == []


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("mode: ambient\nprime: two\ngroup: x.yaml\n")
    assert main(["fmark", "--fusion", str(bad)]) == 2
    assert "fusion.prime" in capsys.readouterr().err
    assert main(["biset", "--fusion", str(DATA / "d8_a6_partition.yaml")]) == 2
    assert main(["fmark", "--fusion", D8A6, "--element-cap", "100"]) == 3
    # two non-central involution classes of D8 fused: not saturated
    (tmp_path / "ns.yaml").write_text(
        "mode: partition\nprime: 2\n"
        "group: {name: D8, domain: 4, generators: ['(1,2,3,4)', '(1,3)']}\n"
        "classes: [['<(1,3)>', '<(1,2)(3,4)>']]\n")
    assert main(["alpha", "--fusion", str(tmp_path / "ns.yaml"), "--out", str(tmp_path / "o")]) == 1
    assert "coefficient -1" in capsys.readouterr().err


def test_text_format(tmp_path):
    main(["fmark", "--fusion", D8A6, "--format", "text", "--out", str(tmp_path / "f.txt")])
    text = (tmp_path / "f.txt").read_text()
    assert text.startswith("# fmark\nS = D8 (order 8), p = 2")
    assert "f_mark:" in text and "1/8" in text


# -- documents -----------------------------------------------------------------

def test_generator_forms_agree():
    a = group_from_document({"name": "D8", "domain": 6, "generators": ["(1,2,3,4)(5,6)", "(1,3)(5,6)"]})
    b = group_from_document({"name": "D8", "generators": [[[1, 2, 3, 4], [5, 6]], [[1, 3], [5, 6]]]})
    assert a.perms == b.perms and b.degree == 6
    assert parse_cycles("(1,2)(3,4,5)") == [[1, 2], [3, 4, 5]]
    assert parse_cycles("()") == []


@pytest.mark.parametrize("doc,where", [
    ({"name": "X", "domain": 3, "generators": ["(1,4)"]}, "outside the domain"),
    ({"name": "X", "domain": 3, "generators": ["(1,1)"]}, "appears twice"),
    ({"name": "X", "domain": 3, "generators": ["(1,a)"]}, "non-integer"),
    ({"name": "X", "domain": 0, "generators": []}, "group.domain"),
    ({"name": "X", "domain": 3}, "group.generators"),
    ({"name": "X", "domain": 3, "generators": "(1,2)"}, "group.generators"),
    ([1, 2], "expected a mapping"),
])
def test_group_document_errors(doc, where):
    with pytest.raises(SpecError, match=where):
        group_from_document(doc)


def test_fusion_document_errors():
    base = {"mode": "ambient", "prime": 2, "group": str(DATA / "d8.yaml"), "ambient": str(DATA / "a6.yaml")}
    assert fusion_from_document(base).n_classes == 6
    for field, value, match in [("prime", "2x", "fusion.prime"), ("mode", "magic", "fusion.mode"),
                                ("group", None, "fusion.group"), ("group", "/nowhere.yaml", "cannot read")]:
        doc = dict(base)
        if value is None:
            del doc[field]
        else:
            doc[field] = value
        with pytest.raises(SpecError, match=match):
            fusion_from_document(doc)


def test_partition_document_errors():
    base = {"mode": "partition", "prime": 2, "group": str(DATA / "d8.yaml")}
    with pytest.raises(SpecError, match=r"classes\[0\]"):
        fusion_from_document({**base, "classes": ["<(1,3)(5,6)>"]})
    with pytest.raises(SpecError, match="two blocks"):
        fusion_from_document({**base, "classes": [["<(1,3)(5,6)>"], ["<(2,4)(5,6)>"]]})
    f = fusion_from_document({**base, "classes": []})
    assert f.is_trivial()


def test_subgroup_references():
    l = fusion("D8/A6").lattice
    z = subgroup_index(l, "<(1,3)(2,4)>", "q")
    assert subgroup_index(l, ["(1,3)(2,4)"], "q") == z
    assert subgroup_index(l, "1", "q") == 0
    with pytest.raises(SpecError, match="q"):
        subgroup_index(l, ["(1,2)"], "q")


def test_yaml_errors_have_position(tmp_path):
    p = tmp_path / "broken.yaml"
    p.write_text("mode: ambient\nprime: [2\n")
    with pytest.raises(SpecError, match=r"broken.yaml: line 3, column 1"):
        load_document(str(p), "fusion")


def test_dumps_is_stable():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"b": 1, "a": [1, 2]})
    assert dumps({"x": 1}).endswith("\n")
