"""The full acceptance suite, one test per criterion.

Each criterion prints its own PASS/FAIL line (also available through
``splitqm selftest``) and fails the test run if it does not hold at the
stated tolerance.
"""

import pytest

from splitqm.selftest import CRITERIA, DEFAULT_SEED, format_result

_IDS = [f"{number:02d}-{name}" for number, name, _ in CRITERIA]


def test_the_registry_is_complete():
    assert [number for number, _, _ in CRITERIA] == list(range(1, 14))


@pytest.mark.parametrize("number, name, func", CRITERIA, ids=_IDS)
def test_criterion(number, name, func, capsys):
    result = func(DEFAULT_SEED)
    with capsys.disabled():
        print(format_result(result))
    assert result.number == number
    assert result.passed, result.detail
