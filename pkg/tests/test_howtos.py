import os
import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
HOWTO_PATHS = sorted((REPO_ROOT / "howtos").glob("*.py"))


def run_howto(howto_path: Path) -> subprocess.CompletedProcess[str]:
    env = os.environ.copy()
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(REPO_ROOT), env.get("PYTHONPATH")]))
    env.setdefault("PYTHONIOENCODING", "utf-8")
    return subprocess.run(
        [sys.executable, str(howto_path)],
        cwd=howto_path.parent,
        capture_output=True,
        text=True,
        check=False,
        env=env,
    )


@pytest.mark.parametrize("howto_path", HOWTO_PATHS, ids=lambda howto_path: howto_path.name)
def test_howto_runs_with_zero_return_code(howto_path: Path):
    result = run_howto(howto_path)

    assert result.returncode == 0, (
        f"Howto returned {result.returncode}: {howto_path}\n"
        f"STDOUT:\n{result.stdout}\n"
        f"STDERR:\n{result.stderr}"
    )
