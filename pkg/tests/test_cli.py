import io as stdio
import json

import pytest

from nplace import io
from nplace.algebra import cyclic_add, left_zero, right_zero
from nplace.cli import run
from nplace.core_types import Carrier, PlaceFunction
from nplace.determining_pairs import decompose
from nplace.errors import LoadError
from nplace.representability import faithful_representation, totalize


def call(*argv):
    out = stdio.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None)


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return p

    return write


def test_check_representable_exit_codes(files):
    code, rep = call("check-representable", files("z2.json", io.algebra_to_doc(cyclic_add())), "--witness")
    assert code == 1 and rep["schema"] == 1
    assert rep["witnesses"]["violation"]["verified"] is True
    assert rep["witnesses"]["violation"]["seq_u"] == [[1, "1"], [2, "1"]]
    code, rep = call("check-representable", files("lz.json", io.algebra_to_doc(left_zero())))
    assert code == 0 and rep["verdicts"]["representable"]
    assert "seconds" in rep["timing"]


def test_validate_algebra(files):
    assert call("validate-algebra", files("ok.json", io.algebra_to_doc(left_zero())))[0] == 0
    assert call("validate-algebra", files("bad.json", {"n": 1, "elements": ["a"], "tables": [[[0, 1]]]}))[0] == 2
    code, rep = call("validate-algebra", files("na.json", {"elements": ["a", "b"], "tables": [[[1, 0], [0, 0]]]}))
    assert code == 1 and rep["witnesses"]["not_associative"]["operation"] == 1
    assert call("validate-algebra", "/nonexistent.json")[0] == 2


def test_usage_errors():
    assert call("no-such-command")[0] == 2
    assert call("check-identities")[0] == 2


def test_quiet(files, capsys):
    code = run(["check-representable", str(files("z2.json", io.algebra_to_doc(cyclic_add()))), "--quiet"])
    assert code == 1 and capsys.readouterr().out == ""


def test_representation_pipeline(files, tmp_path):
    alg = files("rz.json", io.algebra_to_doc(right_zero()))
    rep, tot, ext = tmp_path / "rep.json", tmp_path / "tot.json", tmp_path / "ext.json"
    assert call("build-representation", alg, "-o", rep)[0] == 0
    R = io.load_representation(rep)
    F = faithful_representation(right_zero())
    assert R.is_injective() and [len(f) for f in R.assignment] == [len(f) for f in F.assignment]
    code, out = call("totalize", rep, "-o", tot)
    assert code == 0 and out["verdicts"]["total"] and out["verdicts"]["injective"]
    code, out = call("extend-unitary", tot, "-o", ext, "--cap", 1000)
    assert code == 0 and out["verdicts"]["unitary"] and out["verdicts"]["size"] == 9
    code, out = call("extend-unitary", rep)
    assert code == 2
    code, out = call("decompose", rep)
    assert code == 0 and out["verdicts"]["union_equals_P"] and out["verdicts"]["pairs_valid"]


def test_build_representation_refuses_z2(files, tmp_path):
    code, out = call("build-representation", files("z2.json", io.algebra_to_doc(cyclic_add())), "-o", tmp_path / "x")
    assert code == 1 and not (tmp_path / "x").exists()


def test_check_determining_pair(files):
    G = left_zero()
    dec = decompose(faithful_representation(G), validate=False)
    alg = files("lz.json", io.algebra_to_doc(G))
    good = files("pair.json", io.pair_to_doc(dec.members[0].pair))
    code, out = call("check-determining-pair", alg, good)
    assert code == 0 and all(out["verdicts"]["axioms"].values())
    assert out["verdicts"]["axiom4_reading"] == "symmetric"
    code, out = call("check-determining-pair", alg, good, "--axiom4", "mixed")
    assert code == 0 and out["verdicts"]["axiom4_reading"] == "mixed"
    doc = io.pair_to_doc(dec.members[0].pair)
    doc["W"] = ["e1"]
    code, out = call("check-determining-pair", alg, files("bad.json", doc))
    assert code == 1 and out["verdicts"]["axioms"]["2"] is False


def test_chi_commands(files, tmp_path):
    alg = files("lz.json", io.algebra_to_doc(left_zero()))
    full = files("full.json", {"pairs": [["a", "a"], ["a", "b"], ["b", "a"], ["b", "b"]]})
    diag = files("diag.json", {"pairs": [["a", "a"], ["b", "b"]]})
    assert call("check-chi", alg, full)[0] == 0
    code, out = call("check-chi", alg, diag)
    assert code == 1 and out["verdicts"]["v_negative"] is False
    code, out = call("build-projection-rep", alg, full, "-o", tmp_path / "p.json")
    assert code == 0 and out["verdicts"]["chi_matches"] and out["verdicts"]["faithful"]
    P = io.load_representation(tmp_path / "p.json")
    assert P.is_injective()
    assert call("check-chi", alg, files("junk.json", {"pairs": [["a", "zz"]]}))[0] == 2


def test_census_command():
    code, out = call("census", "--n", 2, "--order", 2, "--oracle")
    assert code == 0 and out["verdicts"]["algebras"] == 64 and out["verdicts"]["oracle_agrees"]
    code, out = call("census", "--n", 3, "--order", 4)
    assert code == 2


def test_check_identities_commands(files):
    code, out = call("check-identities", "--exhaustive", "--carrier-size", 2, "--arity", 2,
                     "--identity", "EQ4", "--identity", "EQ10")
    assert code == 0 and all(r["passed"] for r in out["verdicts"]["identities"])
    T = totalize(faithful_representation(left_zero()))
    f = files("fs.json", io.representation_to_doc(T))
    code, out = call("check-identities", "--functions", f, "--identity", "EQ12", "--seed", 3)
    assert code == 0


def test_function_file_duplicate_key(files):
    doc = {"arity": 1, "carrier": ["a", "b"], "functions": {"f": [[["a"], "b"], [["a"], "a"]]}}
    with pytest.raises(LoadError):
        io.load_functions(files("dup.json", doc))


def test_label_rendering_roundtrip():
    R = totalize(faithful_representation(left_zero()))
    doc = io.representation_to_doc(R)
    assert set(doc["carrier"]) == {"a", "b", "e1", "e2", "c"}
    back = io.representation_from_doc(json.loads(json.dumps(doc)))
    assert [len(f) for f in back.assignment] == [len(f) for f in R.assignment]
    from nplace.representability import verify_representation

    assert verify_representation(back)[0]


def test_point_names_uniquified():
    from nplace.algebra import Selector

    names = io.point_names(["e1", Selector(1)])
    assert names == {"e1": "e1", Selector(1): "e1'"}


def test_functions_doc_roundtrip():
    A = Carrier(("x", "y"))
    f = PlaceFunction(2, A, {("x", "y"): "y"})
    arity, carrier, fs = io.functions_from_doc(io.functions_to_doc({"f": f}))
    assert arity == 2 and fs["f"] == f
