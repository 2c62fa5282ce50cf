import os
import subprocess
import sys
from pathlib import Path

import pytest

from cornering import cli
from cornering.fixtures import FIXTURE_DIR

from cli_cases import CASES

GOLDEN = Path(__file__).parent / "golden"


def run_cli(argv, capsys):
    cwd = os.getcwd()
    os.chdir(FIXTURE_DIR)
    try:
        code = cli.main(argv)
    finally:
        os.chdir(cwd)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    argv, expected_code = CASES[name]
    code, out, err = run_cli(argv, capsys)
    assert code == expected_code, err
    golden = GOLDEN / f"{name}.out"
    assert out.encode() == golden.read_bytes()
    if code == 2:
        assert err.startswith("error: ")


def test_errors_go_to_stderr(capsys):
    code, out, err = run_cli(["eval", "no_such_file.ws"], capsys)
    assert code == 2 and not out and "error: " in err


def test_unknown_name_in_a_file(capsys):
    code, _, err = run_cli(["eval", "baking_row.cell:oven"], capsys)
    assert code == 2 and "oven" in err


def test_not_equal_exit_code(tmp_path, capsys):
    (tmp_path / "a.ws").write_text(f'use "{FIXTURE_DIR / "baking.theory"}";\nlift(knead)\n')
    (tmp_path / "b.ws").write_text(f'use "{FIXTURE_DIR / "baking.theory"}";\nlift(knead ; knead)\n')
    code, out, _ = run_cli(["equal", str(tmp_path / "a.ws"), str(tmp_path / "b.ws")], capsys)
    assert (code, out) == (1, "NotEqualStructurally\n")


def test_unknown_exit_code(tmp_path, capsys):
    (tmp_path / "t.theory").write_text("theory K { objects d; arrows k: d -> d; equations k ; k = k; }\n")
    (tmp_path / "a.ws").write_text('use "t.theory";\nlift(k)\n')
    (tmp_path / "b.ws").write_text('use "t.theory";\nvid(d)\n')
    code, out, _ = run_cli(["equal", str(tmp_path / "a.ws"), str(tmp_path / "b.ws")], capsys)
    assert (code, out) == (3, "Unknown\n")


def test_render_to_a_file(tmp_path, capsys):
    target = tmp_path / "bakery.tex"
    code, out, _ = run_cli(["render", "baking_row.cell", "--format", "tikz", "--out", str(target)], capsys)
    assert code == 0 and not out
    assert target.read_text().startswith("\\begin{tikzpicture}")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cornering.cli", "eval", "baking_row.cell"],
        cwd=FIXTURE_DIR, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.encode() == (GOLDEN / "eval_bakery.out").read_bytes()
