from __future__ import annotations

import json
from pathlib import Path

import pytest

from pfkit.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, main

DATA = Path(__file__).resolve().parent.parent / "data"


def d(name: str) -> str:
    return str(DATA / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


GOLDEN = [
    # (argv, exit code, substring of stdout)
    (["pf", "fundamentals", "--catalog", "dyadic"], EXIT_OK, "{0, 1, -1, 2, 1/2}"),
    (["pf", "fundamentals", "--catalog", "regular"], EXIT_OK, "{0, 1}"),
    (["pf", "enumerate", "--catalog", "gf(3)"], EXIT_OK, "{0, 1, 2}"),
    (["pf", "enumerate", "--catalog", "dyadic", "--bound", "1"], EXIT_INCONCLUSIVE, "1/2"),
    (["pf", "contains", "--catalog", "dyadic", "--", "-1/8"], EXIT_OK, "yes"),
    (["pf", "contains", "--catalog", "regular", "2"], EXIT_FAIL, "no"),
    (["hom", "verify", "--file", d("f2xf3_to_u0.json")], EXIT_OK, "exact"),
    (["hom", "verify", "--file", d("gf3_to_gf2.json")], EXIT_FAIL, "(1,1,2)"),
    (["hom", "verify", "--file", d("dyadic_to_gf3.json")], EXIT_OK, "exact"),
    (["hom", "verify", "--file", d("gf3_to_dyadic.json")], EXIT_FAIL, "3 = 0"),
    (["hom", "search", "--catalog", "gf(3)", "--field", "2"], EXIT_OK, ""),
    (["hom", "search", "--catalog", "regular", "--field", "2"], EXIT_OK, "-1 -> 1"),
    (["hom", "compose", d("f2xf3_to_u0.json"), d("regular_to_gf3.json")], EXIT_OK, "exact"),
    (["hom", "charset", "--catalog", "f2xf3", "--strong"], EXIT_OK, "{2, 3}"),
    (["hom", "charset", "--catalog", "gf(3)", "--degree-bound", "1"], EXIT_OK, "{3}"),
    (["charset", "--catalog", "dyadic", "--strong"], EXIT_OK, "{0, 3, 5, 7, 11, 13}"),
    (["construct", "charset-pf", "--set", "P\\{2}"], EXIT_OK, "Z[1/2]"),
    (["construct", "charset-pf", "--set", "2,3"], EXIT_OK, "Z/6"),
    (["construct", "charset-pf", "--set", ""], EXIT_FAIL, "fail"),
    (["construct", "strong-charset-pf", "--set", "0,3"], EXIT_OK, "Q"),
    (["construct", "wqo-chain", "--q", "2", "--n", "3"], EXIT_OK, "exact"),
    (["lift", "build", "--catalog", "gf(2)"], EXIT_OK, "X_1 - 1"),
    (["lift", "check", "--catalog", "gf(3)"], EXIT_OK, "exact"),
    (["dowling", "build", "--catalog", "gf(3)"], EXIT_OK, "-X_2*Y_2 + Y_2 - 1"),
    (["dowling", "check", "--catalog", "gf(3)"], EXIT_OK, "exact"),
    (["dowling", "check", "--catalog", "dyadic", "--bound", "1"], EXIT_INCONCLUSIVE, "bounded"),
    (["dowling", "universal", "--hom", d("gf3_to_dyadic.json")], EXIT_FAIL, "3 = 0"),
    (["matrix", "check", "--strong", "--file", d("entry_two.txt"), "--catalog", "regular"], EXIT_FAIL,
     "fail: 1×1 minor at (1,1) = 2"),
    (["matrix", "check", "--weak", "--file", d("regular_123.txt"), "--catalog", "regular"], EXIT_FAIL,
     "fail: maximal minor at columns {1,3} = 2"),
    (["matrix", "check", "--weak", "--file", d("dyadic_123.txt"), "--catalog", "dyadic"], EXIT_OK, "pass"),
    (["matrix", "check", "--strong", "--file", d("u3_regular.txt"), "--catalog", "regular"], EXIT_OK, "pass"),
    (["matrix", "matroid", "--file", d("u3_regular.txt"), "--catalog", "regular"], EXIT_OK, "1 2\n1 3\n2 3"),
    (["matrix", "transport", "--file", d("dyadic_123.txt"), "--catalog", "dyadic", "--hom", d("dyadic_to_gf3.json")],
     EXIT_OK, "3 bases preserved"),
    (["matrix", "graphic", "--file", d("network.txt")], EXIT_OK, "true"),
    (["matrix", "det", "--file", d("entry_two.txt")], EXIT_OK, "2"),
    (["catalog"], EXIT_OK, "f2xf3"),
    # usage and parse errors
    (["pf", "enumerate", "--catalog", "nonsense"], EXIT_USAGE, ""),
    (["pf", "enumerate"], EXIT_USAGE, ""),
    (["hom", "verify", "--file", d("missing.json")], EXIT_USAGE, ""),
    (["pf", "contains", "--catalog", "dyadic", "1/"], EXIT_USAGE, ""),
]


@pytest.mark.parametrize("argv,code,needle", GOLDEN, ids=[" ".join(a[:3]) for a, _, _ in GOLDEN])
def test_golden(capsys, argv, code, needle):
    got, out, err = run(capsys, *argv)
    assert got == code, out + err
    assert needle in out
    if code == EXIT_USAGE:
        assert err


def test_unknown_subcommand_is_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE


def test_catalog_is_deterministic(capsys):
    _, a, _ = run(capsys, "catalog", "--json")
    _, b, _ = run(capsys, "catalog", "--json")
    assert a == b
    names = [row["name"] for row in json.loads(a)["catalog"]]
    assert {"regular", "dyadic", "f2xf3"} <= set(names)


# -- JSON round trips: what the CLI emits, it accepts back ---------------------


def test_pf_roundtrip(capsys, tmp_path):
    _, out, _ = run(capsys, "pf", "construct", "--catalog", "near_regular", "--json")
    f = tmp_path / "pf.json"
    f.write_text(out)
    code, out2, _ = run(capsys, "pf", "construct", "--pf-file", str(f), "--json")
    assert code == EXIT_OK and json.loads(out2) == json.loads(out)


def test_hom_search_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "hom", "search", "--catalog", "regular", "--field", "5", "--json")
    assert code == EXIT_OK
    homs = json.loads(out)["homs"]
    assert len(homs) == 1
    f = tmp_path / "h.json"
    f.write_text(json.dumps(homs[0]))
    code, out, _ = run(capsys, "hom", "verify", "--file", str(f))
    assert code == EXIT_OK and "exact" in out


def test_compose_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "hom", "compose", d("regular_to_gf3.json"), d("dyadic_to_gf3.json"), "--json")
    assert code == EXIT_FAIL or code == EXIT_USAGE  # targets do not match
    code, out, _ = run(capsys, "--json", "hom", "compose", d("f2xf3_to_u0.json"), d("regular_to_gf3.json"))
    assert code == EXIT_OK
    f = tmp_path / "c.json"
    f.write_text(out)
    code, out, _ = run(capsys, "hom", "verify", "--file", str(f))
    assert code == EXIT_OK and "exact" in out


def test_strong_compose_roundtrip(capsys, tmp_path):
    inc = tmp_path / "inc.json"
    inc.write_text(json.dumps({"source": {"catalog": "regular"}, "target": {"catalog": "dyadic"},
                               "kind": "strong", "generator_images": []}))
    code, out, _ = run(capsys, "--json", "hom", "compose", str(inc), d("dyadic_to_gf3.json"))
    assert code == EXIT_OK
    f = tmp_path / "c.json"
    f.write_text(out)
    code, out, _ = run(capsys, "hom", "verify", "--file", str(f))
    assert code == EXIT_OK and "exact" in out


def test_lift_model_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "lift", "build", "--catalog", "gf(2)", "--target-catalog", "regular",
                       "--assign", "X_0=0", "--assign", "X_1=1")
    assert code == EXIT_OK
    f = tmp_path / "m.json"
    f.write_text(out)
    assert run(capsys, "lift", "check", "--model", str(f))[0] == EXIT_OK
    code, out, _ = run(capsys, "lift", "idempotence", "--model", str(f))
    assert code == EXIT_OK and "bijection found" in out
    bad = json.loads(f.read_text())
    bad["assignment"]["X_1"] = "-1"
    f.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "lift", "check", "--model", str(f))
    assert code == EXIT_FAIL and "X_1 - 1" in out


def test_dowling_model_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "dowling", "build", "--catalog", "gf(3)", "--target-catalog", "dyadic",
                       "--assign", "X_1=1", "--assign", "X_2=-1", "--assign", "Y_2=1/2")
    assert code == EXIT_OK
    f = tmp_path / "m.json"
    f.write_text(out)
    assert run(capsys, "dowling", "check", "--model", str(f))[0] == EXIT_OK
    code, out, _ = run(capsys, "dowling", "bijection", "--model", str(f))
    assert code == EXIT_OK and "bijection" in out
    code, out, _ = run(capsys, "dowling", "idempotence", "--model", str(f), "--bound", "1")
    assert code == EXIT_INCONCLUSIVE and "bounded" in out


def test_dowling_idempotence_exact(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "dowling", "build", "--catalog", "gf(2)", "--target-catalog", "regular",
                       "--assign", "X_1=1")
    f = tmp_path / "m.json"
    f.write_text(out)
    code, out, _ = run(capsys, "dowling", "idempotence", "--model", str(f))
    assert code == EXIT_OK


def test_universal_hom_on_identity(capsys, tmp_path):
    f = tmp_path / "id.json"
    f.write_text(json.dumps({"source": {"catalog": "gf(3)"}, "target": {"catalog": "gf(3)"},
                             "kind": "strong", "generator_images": []}))
    code, out, _ = run(capsys, "dowling", "universal", "--hom", str(f))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "dowling", "universal", "--hom", str(f), "--json")
    obj = json.loads(out)
    assert obj["commutes"] and obj["assignment"]["Y_2"] == "2"


def test_matrix_parse_error_is_usage(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text('ring {"kind": "integers"}\nrows 2 cols 2\n1 0\n')
    assert run(capsys, "matrix", "det", "--file", str(f))[0] == EXIT_USAGE


def test_json_outputs_parse(capsys):
    for argv in (["pf", "fundamentals", "--catalog", "dyadic"], ["hom", "charset", "--catalog", "f2xf3", "--strong"],
                 ["lift", "build", "--catalog", "gf(3)"], ["matrix", "check", "--file", d("u3_regular.txt"),
                                                             "--catalog", "regular"]):
        code, out, _ = run(capsys, *argv, "--json")
        assert code == EXIT_OK
        json.loads(out)
