"""Acceptance criteria A1-A16, each at its stated tolerance and time bound.

Every criterion prints one PASS/FAIL line; conftest.py repeats them in the
terminal summary so they are visible without ``-s``.
"""

import pytest

from e3stab.verification import CHECKS

SCOREBOARD: list[str] = []


@pytest.mark.parametrize("name", list(CHECKS))
def test_acceptance(name):
    r = CHECKS[name]()
    print(r.line())
    SCOREBOARD.append(r.line())
    assert r.passed, r.details
    assert r.in_time, f"{r.seconds:.2f}s exceeds the {r.bound:g}s bound"
