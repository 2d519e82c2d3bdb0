import json
import subprocess
import sys

import pytest

from hgm.cli import main, to_json
from hgm.generators import complete, cycle, path, star
from hgm.graph import serialize_edge_list


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in [("k4", complete(4)), ("c5", cycle(5)), ("p3", path(3)), ("s5", star(5))]:
        p = tmp_path / f"{name}.edges"
        p.write_text(serialize_edge_list(g, header=False))
        out[name] = str(p)
    (tmp_path / "two.edges").write_text("0 1\n2 3\n")
    out["two"] = str(tmp_path / "two.edges")
    out["dir"] = tmp_path
    return out


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def test_centrality_complete(files, capsys):
    assert run_json(["centrality", files["k4"], "--scale", "1"], capsys) == {
        "scale": 1, "values": [2, 2, 2, 2]}


def test_centrality_variants(files, capsys):
    r = run_json(["centrality", files["s5"], "--uniform", "2"], capsys)
    assert r["values"] == [4, 1.75, 1.75, 1.75, 1.75]
    r = run_json(["centrality", files["k4"], "--tensor-norm", "frobenius"], capsys)
    assert r["scale"] == "tensor" and r["values"][0] == pytest.approx(3 ** 0.5 / 2, rel=1e-11)
    r = run_json(["centrality", files["s5"], "--weights", "0,1"], capsys)
    assert r["scale"] == [0, 1]
    code, out, _ = run(["centrality", files["k4"], "--format", "csv"], capsys)
    assert out.splitlines() == ["vertex,value", "0,2", "1,2", "2,2", "3,2"]
    one_based = files["dir"] / "k4_1.edges"
    one_based.write_text(serialize_edge_list(complete(4), index_base=1, header=False))
    code, out, _ = run(["--index-base", "1", "centrality", str(one_based), "--format", "csv"],
                       capsys)
    assert code == 0 and out.splitlines()[1:] == ["1,2", "2,2", "3,2", "4,2"]
    code, _, err = run(["--index-base", "1", "centrality", files["k4"]], capsys)
    assert code == 2 and "negative" in err


def test_compare(files, capsys):
    r = run_json(["compare", files["k4"], files["k4"]], capsys)
    assert r == {"d_ten": 0, "disagreeing_pairs": 0}
    r = run_json(["compare", files["p3"], files["p3"], "--iso", "--normalized"], capsys)
    assert r["d_iso"] == 0 and r["d_ten_normalized"] == 0


def test_fingerprint(files, capsys, tmp_path):
    out = tmp_path / "fp.json"
    r = run_json(["fingerprint", files["c5"], "--out", str(out)], capsys)
    assert r["energies"] == [10, 10] and r["wiener"] == 15
    assert json.loads(out.read_text()) == r


def test_distribution_and_functional(files, capsys):
    r = run_json(["distribution", files["s5"], "--pairs", "ordered"], capsys)
    assert r == {"support": [0, 5], "mass": [0.6, 0.4], "count": 20}
    r = run_json(["distribution", files["s5"], "--node", "1"], capsys)
    assert r["mass"] == [0.75, 0.25]
    r = run_json(["functional", files["k4"], "--phi", "shannon"], capsys)
    assert r["value"] == 0
    r = run_json(["functional", files["s5"], "--phi", "tv_dispersion", "--scale", "1"], capsys)
    assert r["scales"][0]["value"] == 0.48
    r = run_json(["functional", files["c5"], "--phi", "gini", "--level", "node"], capsys)
    assert len(set(r["values"])) == 1


def test_mds_and_dist(files, capsys, tmp_path):
    coords = tmp_path / "coords.csv"
    r = run_json(["mds", files["k4"], "--scale", "1", "--out", str(coords)], capsys)
    assert r["dim"] == 3
    assert coords.read_text().splitlines()[0] == "vertex,x1,x2,x3"
    dump = tmp_path / "t.bin"
    r = run_json(["dist", files["p3"], "--dump-tensor", str(dump)], capsys)
    assert r["dist"][0] == [0, 1, 2] and r["diameter"] == 2
    assert dump.read_bytes()[:4] == b"HGM1"


def test_gen_and_sketch(files, capsys, tmp_path):
    g = tmp_path / "ws.edges"
    r = run_json(["gen", "--family", "ws", "--n", "40", "--d", "4", "--beta", "0.1",
                  "--seed", "42", "--out", str(g)], capsys)
    assert r["m"] == 80
    first = g.read_text()
    run_json(["gen", "--family", "ws", "--n", "40", "--d", "4", "--beta", "0.1",
              "--seed", "42", "--out", str(g)], capsys)
    assert g.read_text() == first
    r = run_json(["sketch", str(g), "--size", "64", "--seed", "1",
                  "--out", str(tmp_path / "s.bin")], capsys)
    assert len(r["hc_estimate"]) == 40


def test_temporal(files, capsys, tmp_path):
    seq = tmp_path / "seq.txt"
    seq.write_text("--- 0\n0 1\n0 2\n0 3\n--- 1\n0 1\n1 2\n2 3\n")
    r = run_json(["temporal", "dist", str(seq), str(seq)], capsys)
    assert r == {"d_dyn": 0}
    r = run_json(["temporal", "diag", str(seq)], capsys)
    assert r["T"] == 2
    r = run_json(["temporal", "energy", str(seq)], capsys)
    s = r["steps"][0]
    assert all(o <= b for o, b in zip(s["observed"], s["bound"]))


def test_exit_codes(files, capsys, tmp_path):
    code, _, err = run(["centrality"], capsys)
    assert code == 1 and err.startswith("error:")
    code, _, err = run(["frobnicate"], capsys)
    assert code == 1
    code, _, err = run(["centrality", files["k4"], "--bogus"], capsys)
    assert code == 1
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n1 x\n")
    code, _, err = run(["dist", str(bad)], capsys)
    assert code == 2 and err.startswith("error: line 2")
    code, _, err = run(["centrality", files["two"]], capsys)
    assert code == 2 and "disconnected" in err
    code, _, _ = run(["centrality", files["two"], "--allow-disconnected"], capsys)
    assert code == 0
    code, _, err = run(["compare", files["k4"], files["p3"]], capsys)
    assert code == 2
    code, _, err = run(["centrality", str(tmp_path / "missing.edges")], capsys)
    assert code == 2


def test_deterministic_output(files):
    cmd = [sys.executable, "-m", "hgm", "--threads", "1", "fingerprint", files["c5"]]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["wiener"] == 15


def test_json_formatting():
    assert to_json({"a": [1, 2.5, 1 / 3], "b": True, "c": None}) == \
        '{"a": [1, 2.5, 0.333333333333], "b": true, "c": null}'
    assert to_json(float("inf")) == '"inf"'
