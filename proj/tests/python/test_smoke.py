import json

import pytest

import spr_lab


def test_catalog_and_girth():
    names = spr_lab.cage_names()
    assert {"petersen", "heawood", "mcgee", "tutte-coxeter"} <= set(names)
    g = spr_lab.cage_graph("heawood")
    assert g["n"] == 14
    assert len(g["edges"]) == 21
    assert spr_lab.girth(g) == 6
    assert spr_lab.girth({"n": 3, "edges": [[0, 1, 1], [1, 2, 1]]}) is None


def test_instance_round_trip():
    inst = spr_lab.instance_from_cage("mcgee", M=1, L="7/2")
    assert inst.terminal_count == 24
    assert inst.core_girth == 7
    assert inst.terminal_distance(0, 0) == 0
    assert json.loads(inst.validate())["ok"]
    back = spr_lab.Instance.from_json(inst.to_json())
    assert back.to_json() == inst.to_json()
    assert inst.count_length_s_paths(3) == 24 * 3 * 4


def test_solve_stretch_certify():
    inst = spr_lab.instance_from_cage("mcgee", M=1, L="7/2")
    sol = spr_lab.solve(inst, "voronoi")
    assert sol.edge_count == 36
    assert json.loads(sol.validate())["ok"]
    assert spr_lab.stretch(sol)["max_ratio"] == "2"
    cert = spr_lab.certify(sol)
    assert cert["case"] == "many-edges"
    again = spr_lab.Solution.from_json(sol.to_json())
    assert again.to_json() == sol.to_json()


def test_cov_distribution_is_thread_independent():
    inst = spr_lab.instance_from_cage("tutte-coxeter", M=1, L=3)
    sol = spr_lab.solve(inst)
    a = spr_lab.cov_distribution(sol, 3, trials=400, seed=5, threads=1)
    b = spr_lab.cov_distribution(sol, 3, trials=400, seed=5, threads=4)
    assert a == b
    assert a["trials"] == 400


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        spr_lab.instance_from_cage("heawood", M=1, g=7)
    with pytest.raises(ValueError):
        spr_lab.cage_graph("no-such-cage")
    with pytest.raises(spr_lab.FormatError):
        spr_lab.Instance.from_json('{"params": 1}')


def test_cli_in_process():
    code, out, _ = spr_lab.run_cli("gen", "--cage", "petersen", "--terminals", "0,3,7")
    assert code == 0
    assert json.loads(out)["attachments"] == [0, 3, 7]
    code, _, err = spr_lab.run_cli("frobnicate")
    assert code == 64
    assert err
