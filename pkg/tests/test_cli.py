import io
import json
import sys

import pytest

from origamis.cli import run


def capture(argv):
    old = sys.stdout
    sys.stdout = io.StringIO()
    try:
        code = run(argv)
        text = sys.stdout.getvalue()
    finally:
        sys.stdout = old
    return code, text


def test_info_ornithorynque():
    code, text = capture(["info", "--name", "ornithorynque", "--q", "5"])
    report = json.loads(text)
    assert code == 0
    assert report["genus"] == 7
    assert report["stratum"] == [4, 4, 4]
    assert report["veech_index"] == 3


def test_info_deterministic():
    runs = [capture(["info", "--name", "eierlegende-wollmilchsau"])
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_origami_file_roundtrip(tmp_path):
    path = tmp_path / "origami.json"
    data = {"n": 2, "r": [1, 0], "u": [0, 1], "base": 0}
    path.write_text(json.dumps(data))
    code, text = capture(["info", "--origami", str(path)])
    report = json.loads(text)
    assert code == 0 and report["n"] == 2
    assert report["r"] == [1, 0] and report["u"] == [0, 1]


def test_polygon_file(tmp_path):
    path = tmp_path / "poly.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}))
    code, text = capture(["info", "--origami", str(path)])
    assert code == 0 and json.loads(text)["genus"] == 1


def test_malformed_file_is_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 3, "r": [0, 0, 1], "u": [1, 2, 0]}))
    code, text = capture(["info", "--origami", str(path)])
    assert code == 1
    assert json.loads(text)["error"] == "NotPermutation"


def test_verify_exit_code():
    code, text = capture(["verify", "appendix-a"])
    assert code == 0
    assert json.loads(text)["pass"] is True


def test_spin_error_exit_code():
    code, text = capture(["spin", "--name", "eierlegende-wollmilchsau"])
    assert code == 1
    assert json.loads(text)["error"] == "OddOrderZeros"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        capture(["no-such-command"])
    assert info.value.code == 2


def test_twist_subcommand():
    code, text = capture(["twist", "--name", "appendix-b", "--dir", "0,1"])
    report = json.loads(text)
    assert code == 0
    assert report["linear"] == [[1, 0], [120, 1]]
    assert report["k"] == "120"


def test_cylinders_deterministic():
    args = ["cylinders", "--name", "appendix-b", "--dir", "1,1"]
    assert capture(args) == capture(args)


def test_congruence_subcommand():
    code, text = capture(["congruence", "--level", "2"])
    report = json.loads(text)
    assert code == 0 and report["level"] == 2
    assert all(all(x % 2 == 0 for x in (m[0][0] - 1, m[0][1], m[1][0],
                                        m[1][1] - 1))
               for m in report["matrices"])


def test_action_restricted():
    code, text = capture(["action", "--name", "ornithorynque", "--q", "3",
                          "--matrix", "[[1,0],[1,1]]", "--basis", "H_rel"])
    assert code == 0
    report = json.loads(text)
    assert len(report["restricted"]) == 2


def test_supplement_subcommand():
    code, text = capture(["supplement", "--name", "appendix-b",
                          "--probes", "vert,hor,diag"])
    report = json.loads(text)
    assert code == 0
    assert report["feasible"] is False
    assert report["forced"] == {"s_0": "1/6", "s_1": "-5/24"}


def test_homology_subcommand():
    code, text = capture(["homology", "--name", "eierlegende-wollmilchsau"])
    report = json.loads(text)
    assert code == 0 and report["relation_rank"] == 7
    assert report["h1_0_abs_dim"] == 4


def test_decompose_subcommand():
    code, text = capture(["decompose", "--name", "ornithorynque", "--q", "3"])
    report = json.loads(text)
    assert code == 0 and report["pass"] is True
    assert report["subspace_dims"] == {"H1_st": 2, "H_rel": 2,
                                       "H_tau": 2, "H_breve": 4}
