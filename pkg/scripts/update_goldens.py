"""Regenerate tests/golden from the current CLI.  Review the diff before committing."""

import contextlib
import io
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402

from cornering import cli  # noqa: E402
from cornering.fixtures import FIXTURE_DIR  # noqa: E402


def main() -> None:
    out_dir = ROOT / "tests" / "golden"
    out_dir.mkdir(exist_ok=True)
    os.chdir(FIXTURE_DIR)
    for name, (argv, expected) in sorted(CASES.items()):
        buf, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
            code = cli.main(argv)
        flag = "" if code == expected else f"  (exit {code}, expected {expected})"
        (out_dir / f"{name}.out").write_bytes(buf.getvalue().encode())
        print(f"{name}: exit {code}{flag}")


if __name__ == "__main__":
    main()
