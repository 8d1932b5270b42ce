import json
import os
import subprocess
import sys

import pytest

from qpchar.cli import main


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "qpchar", *args], capture_output=True, text=True, env=full_env)


B2_VAC = ["--family", "B", "--rank", "2", "--k0", "1", "--kj", "0"]


def test_character_text(capsys):
    assert main(["character", *B2_VAC, "--max-degree", "1", "--format", "text"]) == 0
    assert capsys.readouterr().out == "1 + q*(y1 + y2 + y1*y2 + y1*y2^2)\n"


def test_character_degree_zero(capsys):
    assert main(["character", *B2_VAC, "--max-degree", "0", "--format", "text"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_character_json_and_csv(capsys):
    assert main(["character", *B2_VAC, "--max-degree", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["max_degree"] == 1 and data["num_colors"] == 2
    assert data["terms"][0] == {"q": 0, "colors": [0, 0], "coeff": 1}
    assert main(["character", *B2_VAC, "--max-degree", "1", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "q,n_1,n_2,coeff"


def test_disallowed_j_exit_code():
    result = run("character", "--family", "F4", "--rank", "4", "--k0", "0", "--kj", "1", "--j", "3", "--max-degree", "2")
    assert result.returncode == 2
    assert "{4}" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ["character", "--family", "G2", "--rank", "3"],
        ["character", "--family", "B", "--rank", "3", "--k0", "0", "--kj", "0"],
        ["character", "--family", "C", "--rank", "3", "--kj", "1"],
        ["character", "--family", "C", "--rank", "3", "--max-degree", "-1"],
        ["identities", "--family", "C", "--rank", "3", "--samples", "0"],
        ["character", "--family", "A", "--rank", "3"],
    ],
)
def test_config_errors_exit_2(args):
    assert run(*args).returncode == 2


def test_enumerate_list(capsys):
    assert main(["enumerate", *B2_VAC, "--max-degree", "1", "--emit", "list", "--format", "text"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "1"
    assert sorted(lines[1:]) == sorted(
        ["x_{1a2}(-1)", "x_{1a1}(-1)", "x_{1a2}(0) x_{1a1}(-1)", "x_{2a2}(0) x_{1a1}(-1)"]
    )
    assert main(["enumerate", *B2_VAC, "--max-degree", "0", "--emit", "list", "--format", "text"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_enumerate_list_json(capsys):
    assert main(["enumerate", *B2_VAC, "--max-degree", "1", "--emit", "list"]) == 0
    items = json.loads(capsys.readouterr().out)
    assert items[0] == {"energy": 0, "colors": [0, 0], "monomial": "1", "particles": [[], []]}
    assert {tuple(i["colors"]) for i in items[1:]} == {(1, 0), (0, 1), (1, 1), (1, 2)}


def test_enumerate_g2_counts(capsys):
    assert main(["enumerate", "--family", "G2", "--k0", "0", "--kj", "1", "--j", "2", "--max-degree", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert not any(t["colors"] == [0, 3] for t in data["terms"])


def test_verify_exit_codes(tmp_path):
    assert run("verify", *B2_VAC, "--max-degree", "10").returncode == 0
    assert run("verify", "--family", "G2", "--k0", "1", "--kj", "1", "--j", "2", "--max-degree", "10").returncode == 0
    out = tmp_path / "report.json"
    result = run("verify", "--family", "C", "--rank", "3", "--k0", "2", "--max-degree", "10",
                 "--cross-term", "literal", "--output", str(out))
    assert result.returncode == 3
    report = json.loads(out.read_text())
    assert report["status"] == "mismatch"
    assert report["first_mismatch"]["q"] == 0


def test_character_literal_refuses_unsound(capsys):
    code = main(["character", "--family", "C", "--rank", "3", "--k0", "2", "--max-degree", "2", "--cross-term", "literal"])
    assert code == 4


def test_identities(capsys):
    args = ["identities", "--family", "C", "--rank", "3", "--k0", "1", "--kj", "1", "--j", "2", "--seed", "42"]
    assert main([*args, "--samples", "1000"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "pass" and report["passed"]["uvjet2"] == 1000
    assert main([*args, "--samples", "1"]) == 0


def test_identity_harness_catches_mutation():
    from qpchar import make_algebra, make_weight
    from qpchar.properties import run_identity_suite
    from qpchar.quasiparticle import conjugate

    def off_by_one(weight, ct):
        return tuple(tuple(r + 1 if t == 0 else r for t, r in enumerate(d)) for d in conjugate(weight, ct))

    report = run_identity_suite(make_weight(make_algebra("C", 3), 1, 1, 2), 50, 7, conjugate_fn=off_by_one)
    assert not report.ok
    assert report.counterexample["check"] == "involution"
    assert "charge_type" in report.counterexample


def test_diagram(capsys):
    assert main(["diagram", "1", "2", "4", "4"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert [int(r.split()[-1]) for r in reversed(rows)] == [4, 3, 2, 2]
    assert main(["diagram"]) == 0
    assert capsys.readouterr().out == "\n"
    assert main(["diagram", "2", "2"]) == 0
    assert capsys.readouterr().out == "[][]  2\n[][]  2\n"


def test_byte_identical_runs_and_threads():
    args = ["enumerate", "--family", "C", "--rank", "3", "--k0", "1", "--kj", "1", "--j", "3", "--max-degree", "7"]
    a = run(*args, env={"QPCHAR_THREADS": "1"})
    b = run(*args, env={"QPCHAR_THREADS": "1"})
    c = run(*args, env={"QPCHAR_THREADS": "4"})
    assert a.returncode == 0
    assert a.stdout == b.stdout == c.stdout


def test_bad_thread_env():
    assert run("enumerate", *B2_VAC, "--max-degree", "2", env={"QPCHAR_THREADS": "0"}).returncode == 2
