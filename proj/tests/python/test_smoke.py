import json

import pytest

import dsgames


def test_round_trip():
    g = dsgames.figure("fig2")
    assert g.players == ["p1", "p2", "p3"]
    assert g.leader == "p2"
    assert g.discount == "1/2"
    assert g.vertices == ["v1", "v2", "v3"]
    again = dsgames.Game.from_json(g.to_json())
    assert again.to_json() == g.to_json()


def test_punishment_values():
    table = dsgames.punishment_values(dsgames.figure("fig2"))
    assert table["values"]["p1"]["v2"] == "-6"
    assert table["values"]["p2"]["v2"] == "6"
    assert table["policies"]["p2"]["v2"] == "exit"


def test_solve_and_verify():
    g = dsgames.figure("fig2")
    res = dsgames.solve(g, memory=3, mode="leader")
    assert res["value"] == "3/2"
    assert res["stats"]["nodes"] > 0

    report = dsgames.verify(g, res["witness"], mode="leader")
    assert report["pass"]
    assert report["weighted_payoffs"]["p2"] == "3/2"
    assert report["plays"][0]["play"] == "v1·v2·v2·v2·v3^ω"

    report = dsgames.verify(g, res["witness"], mode="nash")
    assert not report["pass"]
    assert report["violations"] == 2

    witness = json.loads(res["witness"])
    assert witness["K"] == 3


def test_decide_threshold():
    g = dsgames.figure("fig2")
    assert dsgames.decide(g, 3, "leader", "3/2")["yes"]
    assert not dsgames.decide(g, 3, "leader", "2")["yes"]
    assert dsgames.oracle_value(g, 2, "nash") == dsgames.solve(g, 2, "nash")["value"]


def test_classic_nash():
    g = dsgames.figure("fig1")
    profile = json.dumps(
        {
            "K": 1,
            "entries": [
                {"memory": 0, "vertex": v, "action": a, "next_memory": 0}
                for v, a in [
                    ("v1", "step"),
                    ("v2", "step"),
                    ("v3", "step"),
                    ("s1", "loop"),
                    ("s2", "loop"),
                    ("s3", "loop"),
                ]
            ],
        }
    )
    report = dsgames.classic_nash(g, profile)
    assert not report["pass"]
    assert report["best_response"]["p1"] == "7/6"


def test_generators_and_scaling():
    contradiction = dsgames.from_dimacs("p cnf 1 2\n1 0\n-1 0\n")
    assert dsgames.solve(contradiction, 1, "leader")["value"] == "-1/8"

    g = dsgames.random_game(vertices=3, actions=2, players=2, seed=11)
    assert g.to_json() == dsgames.random_game(vertices=3, actions=2, players=2, seed=11).to_json()

    doubled = dsgames.scale(dsgames.figure("fig4"), "2")
    assert dsgames.solve(doubled, 2, "leader")["value"] == "8/5"


def test_export_smt():
    doc = dsgames.export_smt(dsgames.figure("fig2"), 1, "leader", "1")
    assert doc.startswith(";")
    assert "(set-logic QF_LIRA)" in doc
    assert doc.endswith("(check-sat)\n")


def test_errors():
    with pytest.raises(ValueError):
        dsgames.Game.from_json("not json")
    with pytest.raises(ValueError):
        dsgames.figure("fig9")
    with pytest.raises(ValueError):
        dsgames.solve(dsgames.figure("fig2"), 0, "nash")
