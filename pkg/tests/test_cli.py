import json

import pytest

from pratio.cli import main


def test_check(capsys):
    assert main(["check", "--u1", "xy", "--u2", "yx", "-p", "2"]) == 1
    assert main(["check", "--u1", "x", "--u2", "y", "-p", "2"]) == 0
    assert main(["check", "--u1", "x", "--u2", "y", "-p", "6"]) == 1
    assert "admissible" in capsys.readouterr().out


def test_build_verify_export(tmp_path, capsys):
    cert, trace, dot = tmp_path / "c.json", tmp_path / "t.log", tmp_path / "g.dot"
    assert main(["build", "--u1", "x", "--u2", "y", "-p", "2", "-n", "1",
                 "--out", str(cert), "--trace", str(trace)]) == 0
    assert json.loads(cert.read_text())["order_u1"] == 4
    assert "step 0 letter x vertices 8 max_x 4 max_y 2" in trace.read_text()
    assert main(["verify", str(cert)]) == 0
    assert main(["export-dot", "--in", str(cert), "--out", str(dot)]) == 0
    assert dot.read_text().count("->") == 16

    data = json.loads(cert.read_text())
    data["order_u1"] = 8
    cert.write_text(json.dumps(data))
    capsys.readouterr()
    assert main(["verify", str(cert)]) == 1
    assert "claimed order mismatch" in capsys.readouterr().out


def test_build_exit_codes(tmp_path):
    assert main(["build", "--u1", "x", "--u2", "X", "-p", "2", "-n", "1"]) == 1
    assert main(["build", "--u1", "x", "--u2", "y", "-p", "2", "-n", "6", "--max-degree", "64"]) == 2
    assert main(["build", "--u1", "xyXY", "--u2", "x", "-p", "2", "-n", "0",
                 "--max-truncation", "1"]) == 2


def test_verify_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["verify", str(bad)]) == 1
    assert "malformed" in capsys.readouterr().out
    assert main(["verify", str(tmp_path / "missing.json")]) == 1


def test_oracle(capsys):
    assert main(["oracle", "--u1", "x", "--u2", "x", "-p", "3", "--max-order", "9"]) == 0
    assert json.loads(capsys.readouterr().out) == [[1, 1], [3, 3], [9, 9]]


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["build", "--u1", "x"])
