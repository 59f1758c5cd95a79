"""The ten acceptance criteria at full size.  Each prints one PASS/FAIL line."""
import pytest

from ceiso.harness import CRITERIA, SuiteConfig, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number, SuiteConfig())
    with capsys.disabled():
        print(f"\n{result.status_line()} [{result.seconds:.1f}s]")
    assert result.passed, "\n".join([result.summary, *result.lines[:20]])
