import random

import pytest

from leelattice.mceliece import make_rng


@pytest.fixture
def pyrng():
    return random.Random(20240917)


@pytest.fixture
def nprng():
    return make_rng(20240917)


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Records one pass/fail line per acceptance criterion for the terminal summary."""

    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
