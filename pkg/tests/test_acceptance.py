"""The twelve acceptance criteria at their stated tolerances.

Each criterion prints one PASS/FAIL line; the same lines are repeated in the
pytest terminal summary. Run directly with ``python3 tests/test_acceptance.py``
for the table alone.
"""

import pytest

from sol3 import selftest

RESULTS = []


@pytest.mark.parametrize("number, check", list(enumerate(selftest.CHECKS, 1)),
                         ids=[c.__name__.removeprefix("check_") for c in selftest.CHECKS])
def test_criterion(number, check):
    result = check()
    line = f"criterion {number:2d} {'PASS' if result.passed else 'FAIL'}: {result.name} " \
           f"(measured {result.measured:.3e}, tolerance {result.tolerance:.1e}; {result.detail})"
    RESULTS.append(line)
    print(line)
    assert result.passed, line


if __name__ == "__main__":
    print(selftest.format_table(selftest.run_all()))
