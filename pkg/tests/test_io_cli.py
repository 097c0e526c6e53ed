import json
from fractions import Fraction as Q

import pytest

from ppchow import io as pio
from ppchow.cli import main
from ppchow.cycles import InvariantCycle
from ppchow.fixtures import f1_complex, f2_complex, f5_complex
from ppchow.polyhedra import cone_over, vertex_chart
from ppchow.polyring import HomogPoly
from ppchow.ppfan import constant_pp, phi_ray
from ppchow.specialfiber import VertexTuple, make_affine_pp


def test_complex_round_trip():
    for pc in (f2_complex(), f5_complex()):
        data = pio.complex_to_json(pc)
        back = pio.complex_from_json(json.loads(json.dumps(data)))
        assert back.same_as(pc)


def test_poly_and_pp_round_trip():
    p = HomogPoly(2, 2, {(2, 0): Q(1, 2), (1, 1): -3})
    assert pio.poly_from_json(pio.poly_to_json(p), 2) == p
    F2 = f2_complex()
    fan = cone_over(F2).fan
    f = phi_ray(fan, (0, 1))
    assert pio.pp_from_json(pio.pp_to_json(f), fan) == f


def test_affine_tuple_cycle_round_trip():
    F2 = f2_complex()
    x = HomogPoly.linear_form((1,))
    a = make_affine_pp(F2, [x, x, x], 1)
    assert pio.affine_from_json(pio.affine_to_json(a), F2) == a
    t = VertexTuple(F2, 0, {(Q(0),): constant_pp(vertex_chart(F2, (Q(0),)).fan, 1)})
    assert pio.vertex_tuple_from_json(pio.vertex_tuple_to_json(t), F2) == t
    z = InvariantCycle(1, 1, {((Q(1),),): Q(3, 2)})
    assert pio.cycle_from_json(pio.cycle_to_json(z), 1) == z


@pytest.fixture
def workdir(tmp_path):
    paths = {}
    for name, pc in (("f1", f1_complex()), ("f2", f2_complex()), ("f5", f5_complex())):
        p = tmp_path / f"{name}.json"
        pio.dump_json(pio.complex_to_json(pc), str(p))
        paths[name] = str(p)
    chain = tmp_path / "chain.json"
    pio.dump_json({"models": [{"complex": paths["f1"]},
                              {"complex": paths["f2"]},
                              {"complex": paths["f5"]}]}, str(chain))
    paths["chain"] = str(chain)
    cyc = tmp_path / "plus.json"
    pio.dump_json(pio.cycle_to_json(InvariantCycle(1, 1, {((Q(1),),): 1})), str(cyc))
    paths["cycle"] = str(cyc)
    paths["tmp"] = tmp_path
    return paths


def test_cli_validate(workdir, capsys):
    assert main(["validate", workdir["f2"]]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["files"][0]["complete"] and report["files"][0]["regular"]
    bad = workdir["tmp"] / "bad.json"
    bad.write_text(json.dumps({"rank": 1, "points": [["0"], ["1"], ["1/2"], ["2"]],
                               "cells": [{"vertices": [0, 1]},
                                         {"vertices": [2, 3]}]}))
    assert main(["validate", str(bad)]) == 2
    out = json.loads(capsys.readouterr().out)
    assert "NotAComplex" in out["files"][0]["error"]
    # a piecewise file failing a face reports the witness pair
    badpp = workdir["tmp"] / "badpp.json"
    badpp.write_text(json.dumps({
        "complex": workdir["f2"], "degree": 0,
        "cells": [{"cell": 0, "poly": {"degree": 0, "coeffs": {"0": "1"}}},
                  {"cell": 1, "poly": {"degree": 0, "coeffs": {"0": "2"}}},
                  {"cell": 2, "poly": {"degree": 0, "coeffs": {"0": "1"}}}]}))
    assert main(["validate", str(badpp)]) == 2
    out = json.loads(capsys.readouterr().out)
    assert "FacetMismatch" in out["files"][0]["error"]


def test_cli_basis(workdir, capsys):
    assert main(["basis", "--complex", workdir["f2"], "--degree", "1",
                 "--which", "affine"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 3
    assert main(["basis", "--complex", workdir["f2"], "--degree", "1",
                 "--which", "pp-cone"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 4
    assert main(["basis", "--complex", workdir["f2"], "--degree", "0",
                 "--which", "homology"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 2


def test_cli_ddc_golden(workdir, capsys):
    tuple_file = workdir["tmp"] / "v0.json"
    data = {"degree": 0,
            "vertices": [{"vertex": ["0"],
                          "pp": {"degree": 0,
                                 "pieces": [{"cone": 0, "poly": {"degree": 0, "coeffs": {"0": "1"}}},
                                            {"cone": 1, "poly": {"degree": 0, "coeffs": {"0": "1"}}}]}}]}
    tuple_file.write_text(json.dumps(data))
    assert main(["ddc", "--complex", workdir["f2"], "--tuple", str(tuple_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    # dd^c of the component class [V(0)]: -x on the bounded cell, 0 elsewhere
    assert out == {"degree": 1,
                   "cells": [{"cell": 1, "poly": {"degree": 1, "coeffs": {"1": "-1"}}}]}
    # determinism: a second run produces the identical report
    main(["ddc", "--complex", workdir["f2"], "--tuple", str(tuple_file)])
    assert json.loads(capsys.readouterr().out) == out


def test_cli_delta_green_degree(workdir, capsys):
    assert main(["delta", "--chain", workdir["chain"], "--cycle",
                 workdir["cycle"]]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["stabilizes_at"] == 1
    assert main(["green", "--chain", workdir["chain"], "--cycle",
                 workdir["cycle"], "--start", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["green_certificate"] is not None
    assert main(["degree", "--chain", workdir["chain"], "--cycle",
                 workdir["cycle"]]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == {"degree": 0, "coeffs": {"0": "1"}}


def test_cli_push_and_refine(workdir, capsys):
    aff = workdir["tmp"] / "aff.json"
    aff.write_text(json.dumps({
        "degree": 1,
        "cells": [{"cell": 2, "poly": {"degree": 1, "coeffs": {"1": "1"}}},
                  {"cell": 3, "poly": {"degree": 1, "coeffs": {"1": "1"}}}]}))
    assert main(["push", "--source", workdir["f5"], "--target", workdir["f2"],
                 "--affine", str(aff)]) == 0
    json.loads(capsys.readouterr().out)
    assert main(["refine", "--complex", workdir["f2"], "--point", "-1"]) == 0
    refined = pio.complex_from_json(json.loads(capsys.readouterr().out))
    assert refined.same_as(f5_complex())


def test_cli_check_core(capsys):
    assert main(["check", "--suite", "core", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_cli_input_error_exit_code(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    assert main(["delta", "--chain", missing, "--cycle", missing]) == 2
