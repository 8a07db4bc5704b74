"""All thirteen acceptance criteria, each at its stated runtime budget."""
import hashlib
import subprocess
import sys

import pytest

from gradedverse.acceptance import ARTIFACT_CRITERIA, CRITERIA, DEFAULT_SEED

RESULT_LINES: list[str] = []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number](DEFAULT_SEED)
    RESULT_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()


def test_artifacts_identical_across_processes():
    script = (
        "import hashlib\n"
        "from gradedverse.acceptance import CRITERIA, ARTIFACT_CRITERIA, DEFAULT_SEED\n"
        "for n in ARTIFACT_CRITERIA:\n"
        "    print(n, hashlib.sha256(CRITERIA[n](DEFAULT_SEED).artifact).hexdigest())\n"
    )
    out = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, check=True).stdout
    theirs = dict(line.split() for line in out.splitlines())
    for n in ARTIFACT_CRITERIA:
        ours = hashlib.sha256(CRITERIA[n](DEFAULT_SEED).artifact).hexdigest()
        assert theirs[str(n)] == ours, f"criterion {n} artifact differs between processes"
