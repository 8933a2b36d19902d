import json
import subprocess
import sys

import pytest

from poschart.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def test_chart_command(capsys):
    code, out, _ = run(capsys, "chart", "--catalog", "pentagon")
    assert code == 0
    assert out["ideal"][0] == "y3*y4 + y1 - 1"
    assert len(out["M"]) == 5


def test_moment_command(capsys):
    code, out, _ = run(capsys, "moment", "--catalog", "square", "--s", "1,2", "--t", "1/2,3")
    assert code == 0
    assert out == {"x": ["1/3", "3/2", "2/3", "1/2"], "plane_check": True}


def test_scattering_command(capsys):
    code, out, _ = run(capsys, "scattering", "--catalog", "pentagon", "--x", "2,3,5,7,11")
    assert code == 0
    assert out["count"] == 2 == out["expected_count"]
    assert all(s["residual"] < 1e-8 for s in out["solutions"])


def test_verify_and_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--catalog", "hexagon")
    assert code == 0 and out["ok"]
    code, out, _ = run(capsys, "catalog")
    assert "pentagon" in [e["name"] for e in out["entries"]]


@pytest.mark.parametrize(
    "argv,code,error",
    [
        (["chart", "--catalog", "nope"], 2, None),
        (["chart"], 2, "InputError"),
        (["moment", "--catalog", "square", "--s", "1,0", "--t", "1,1"], 2, "InputError"),
        (["moment", "--catalog", "square", "--s", "1,x", "--t", "1,1"], 2, "InputError"),
        (["chart", "--catalog", "p121"], 3, "NotSmoothFan"),
        (["chart", "--catalog", "diamond"], 3, "Torsion"),
        (["degree", "--catalog", "perm3", "--budget", "50"], 4, "ResourceLimit"),
    ],
)
def test_exit_codes(capsys, argv, code, error):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out is None
    if error is not None:
        assert err["error"] == error


def test_output_file(tmp_path, capsys):
    path = tmp_path / "fan.json"
    assert main(["fan", "--catalog", "pentagon", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())


def test_subprocess_output_is_deterministic():
    argv = [sys.executable, "-m", "poschart.cli", "scattering", "--catalog", "pentagon", "--x", "2,3,5,7,11", "--starts", "60"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["count"] == 2
