import pathlib

import pytest

import ogp

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def load(name):
    return ogp.load(str(CORPUS / name))


def test_load_and_print():
    p = load("double_increment.ogp")
    assert p.components == ["X", "Y"]
    assert "x := x + 1 || pc.X := X.1" in p.text(counters=True)
    again = ogp.parse(p.text())
    assert again.text() == p.text()


def test_check_refined_protocol():
    r = ogp.check(load("init_refinement2.ogp"))
    assert r["ok"]
    assert r["errors"] == []
    assert all(o["verdict"] == "valid" for o in r["obligations"])


def test_check_reports_the_stuck_step():
    r = ogp.check(load("init_simplified.ogp"))
    assert not r["ok"]
    bad = [o for o in r["obligations"] if o["verdict"] == "invalid"]
    assert any(o["rule"].startswith("clause 2b: Y.2") for o in bad)
    assert all(o["counterexample"] for o in bad)


def test_obligations_for_one_property():
    obs = ogp.obligations(load("init_refinement2.ogp"), "Unless0")
    assert len(obs) == 8
    assert {o["kind"] for o in obs} == {"UN"}


def test_oracle():
    r = ogp.oracle(load("double_increment_pc.ogp"))
    assert r["states"] == 4
    assert r["properties"] == {"Safety": True}
    s = ogp.oracle(load("init_simplified.ogp"))
    assert not s["deadlock_free"]
    assert not ogp.leadsto(load("init_simplified.ogp"), "pc.X == 2", "pc.X == 3")
    assert ogp.leadsto(load("init_refinement2.ogp"), "pc.X == 2", "pc.X == 3")


def test_validity():
    p = load("add_one_two.ogp")
    assert ogp.is_valid(p, "x <= 3")
    assert not ogp.is_valid(p, "x < 3")


def test_split():
    p = load("gcl_demo.ogp")
    r = ogp.split(p, "A.i", "b")
    assert r["ok"] and r["inserted"] == "A.k"
    assert ogp.equivalent(p, r["program"]) == []
    s = load("gcl_sabotaged.ogp")
    bad = ogp.split(s, "A.1", "b")
    assert not bad["ok"]
    assert ogp.equivalent(s, bad["program"])


def test_errors():
    with pytest.raises(ogp.ParseError):
        ogp.parse("program P var")
    with pytest.raises(ogp.ContractError):
        ogp.split(load("gcl_demo.ogp"), "A.i", "!b")
    with pytest.raises(ogp.ResourceError):
        ogp.oracle(load("init_refinement2.ogp"), max_states=3)
    with pytest.raises(ogp.Error):
        ogp.parse("program P\nvar x : bool\npre y\ncomponent X\n skip\nend\n")
