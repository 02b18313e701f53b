"""End-to-end CLI runs: exit codes, outputs, determinism of rendering."""

import json
import os

import pytest

from selectra.cli import main

SEGMENT_OK = {
    "complex": {"dim": 1, "vertices": [[0], [1]], "simplices": [[0, 1]]},
    "fields": {
        "phi": {"kind": "interval", "values": {
            "0": {"form": "open_interval", "lo": 0, "hi": 1},
            "1": {"form": "open_interval", "lo": 0, "hi": 1},
            "0-1": {"form": "open_interval", "lo": -1, "hi": 2}}},
        "psi": {"kind": "interval", "values": {
            "0": {"form": "closed_interval", "lo": 0, "hi": 0},
            "1": {"form": "closed_interval", "lo": 1, "hi": 1},
            "0-1": {"form": "closed_interval", "lo": 0, "hi": 1}}},
        "xi": {"kind": "scalar", "values": {"0": 1, "1": 0, "0-1": 0}},
        "eta": {"kind": "scalar", "values": {"0": 2, "1": 2, "0-1": 2}},
        "cov": {"kind": "cover", "size": 2,
                "values": {"0": [0, 1], "0-1": [0, 1], "1": [1]}},
    },
    "subcomplexes": {"A": ["0"], "B": ["1"]},
    "selection": {"target_dim": 1, "values": {"0": ["3/4"], "1": ["1/2"]}},
}

SEGMENT_BAD = {
    "complex": {"dim": 1, "vertices": [[0], [1]], "simplices": [[0, 1]]},
    "fields": {
        "phi": {"kind": "interval", "values": {
            "0": {"form": "open_interval", "lo": 0, "hi": 3},
            "1": {"form": "open_interval", "lo": 0, "hi": 1},
            "0-1": {"form": "open_interval", "lo": 0, "hi": 1}}},
    },
}


@pytest.fixture
def inst(tmp_path):
    path = tmp_path / "seg.json"
    path.write_text(json.dumps(SEGMENT_OK))
    return str(path)


@pytest.fixture
def bad_inst(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(SEGMENT_BAD))
    return str(path)


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_classify_good_instance(inst, tmp_path):
    out = str(tmp_path / "out.json")
    assert main(["classify", "-i", inst, "--field", "phi", "-o", out]) == 0
    obj = read_json(out)
    assert obj["is_open"] is True and obj["is_lsc"] is True


def test_classify_bad_instance_exits_1(bad_inst, tmp_path):
    out = str(tmp_path / "out.json")
    assert main(["classify", "-i", bad_inst, "--field", "phi", "-o", out]) == 1
    obj = read_json(out)
    assert obj["is_open"] is False and obj["open_witness"]["face"] == "0"


def test_insert_subcommand(inst, tmp_path):
    out = str(tmp_path / "ins.json")
    code = main(["insert", "-i", inst, "--field", "xi", "--field2", "eta",
                 "-o", out])
    assert code == 0
    obj = read_json(out)
    assert obj["selection"]["values"]["0"] == ["3/2"]
    assert obj["certificate"]["kind"] == "strict"


def test_select_and_michael(inst, tmp_path):
    out = str(tmp_path / "sel.json")
    assert main(["select", "-i", inst, "--field", "phi", "-o", out]) == 0
    assert read_json(out)["selection"]["values"]["0"] == ["1/2"]
    out2 = str(tmp_path / "mich.json")
    assert main(["michael", "-i", inst, "--field", "psi", "--tol", "1/64",
                 "-o", out2]) == 0
    obj = read_json(out2)
    assert obj["trace"] and obj["certificate"]["kind"] == "tolerance"


def test_michael_rejects_open_bodies(inst, tmp_path):
    code = main(["michael", "-i", inst, "--field", "phi",
                 "-o", str(tmp_path / "x.json")])
    assert code == 2   # open bodies are an unsupported form for michael


def test_extend_and_separate(inst, tmp_path):
    out = str(tmp_path / "ext.json")
    assert main(["extend", "-i", inst, "--field", "phi", "--subcomplex", "A",
                 "-o", out]) == 0
    assert read_json(out)["selection"]["values"]["0"] == ["3/4"]
    out2 = str(tmp_path / "sep.json")
    assert main(["separate", "-i", inst, "--subcomplex", "A",
                 "--subcomplex2", "B", "-o", out2]) == 0
    vals = read_json(out2)["selection"]["values"]
    assert vals["0"] == [-2] and vals["1"] == [2]


def test_refine_subcommands(inst, tmp_path):
    out = str(tmp_path / "ref.json")
    assert main(["refine", "-i", inst, "--field", "cov", "-o", out]) == 0
    obj = read_json(out)
    assert obj["order_bound"] <= obj["guaranteed_bound"]
    out2 = str(tmp_path / "ref0.json")
    assert main(["refine-c0", "-i", inst, "--field", "cov", "-o", out2]) == 0
    assert read_json(out2)["refinement"]["size"] == 2


def test_lift_requires_product(inst, tmp_path):
    assert main(["lift", "-i", inst, "--field", "phi",
                 "-o", str(tmp_path / "l.json")]) == 2


def test_lift_on_product_instance(tmp_path):
    from selectra.complex_core import product_complex, segment_complex
    from selectra.instances import complex_to_obj

    prod = product_complex(segment_complex(), segment_complex())
    doc = {
        "complex": complex_to_obj(prod.complex),
        "fields": {"phi": {"kind": "interval", "values": {
            "-".join(str(v) for v in c): {"form": "open_interval",
                                          "lo": 0, "hi": 1}
            for c in prod.complex.cells}}},
        "product_of": {"left_dim": 1, "right_dim": 1},
    }
    path = tmp_path / "prod.json"
    path.write_text(json.dumps(doc))
    out = str(tmp_path / "lift.json")
    assert main(["lift", "-i", str(path), "--field", "phi", "-o", out]) == 0
    obj = read_json(out)
    assert obj["modulus"] == 0


def test_invalid_input_exit_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert main(["classify", "-i", str(path), "--field", "phi"]) == 2
    path2 = tmp_path / "nofield.json"
    path2.write_text(json.dumps(SEGMENT_BAD))
    assert main(["classify", "-i", str(path2), "--field", "nope"]) == 2


def test_gap_violation_exit_1(inst, tmp_path):
    assert main(["insert", "-i", inst, "--field", "xi", "--field2", "xi",
                 "-o", str(tmp_path / "g.json")]) == 1


def test_plot_svg_golden(inst, tmp_path):
    out = str(tmp_path / "plot.svg")
    code = main(["plot", "-i", inst, "--field", "xi", "--field2", "eta",
                 "-o", out])
    assert code == 0
    with open(out) as fh:
        produced = fh.read()
    golden = os.path.join(os.path.dirname(__file__), "golden",
                          "segment_insertion.svg")
    with open(golden) as fh:
        assert produced == fh.read()


def test_plot_csv(inst, tmp_path):
    out = str(tmp_path / "dump.csv")
    assert main(["plot", "-i", inst, "--format", "csv", "--seed", "3",
                 "--samples", "5", "-o", out]) == 0
    with open(out) as fh:
        lines = fh.read().strip().splitlines()
    assert lines[0] == "cell,x0,f0"
    assert len(lines) == 6


def test_plot_dim3_unsupported(tmp_path):
    doc = {"complex": {"dim": 3,
                       "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
                       "simplices": [[0, 1, 2, 3]]}}
    path = tmp_path / "tet.json"
    path.write_text(json.dumps(doc))
    assert main(["plot", "-i", str(path), "-o", str(tmp_path / "t.svg")]) == 2


def test_verify_on_instance(inst, tmp_path):
    out = str(tmp_path / "rep.json")
    assert main(["verify", "-i", inst, "--field", "phi", "-o", out]) == 0
    obj = read_json(out)
    assert all(c["agree"] for c in obj["checks"])


def test_demo_writes_documents(tmp_path, capsys):
    out_dir = str(tmp_path / "demo")
    assert main(["demo", "--out-dir", out_dir]) == 0
    captured = capsys.readouterr()
    assert "michael" in captured.out
    names = sorted(os.listdir(out_dir))
    assert "separate.json" in names and "refine_c0.json" in names
