import os
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fakeprod import pipeline, zetacalc  # noqa: E402
from known_fields import FIELD_ROWS  # noqa: E402


@pytest.fixture(scope="session")
def fields():
    return pipeline.bundled_fields()


@pytest.fixture(scope="session")
def by_disc(fields):
    return {K.d_k: K for K in fields}


@pytest.fixture(scope="session")
def zeta_run(fields):
    """zeta_k(-1) for every bundled field at the default cutoff, from a cold cache.

    Runs in-process so the Euler-term cache stays warm for later tests.
    """
    zetacalc.clear_cache()
    start = time.perf_counter()
    zetas = pipeline.zeta_table(fields)
    return zetas, time.perf_counter() - start


@pytest.fixture(scope="session")
def zetas(zeta_run):
    return zeta_run[0]


@pytest.fixture(scope="session")
def published_zeta():
    return {dk: Fraction(z) for _, dk, _, z, _ in FIELD_ROWS}


@pytest.fixture(scope="session")
def candidates(fields, zetas):
    return pipeline.judge(pipeline.enumerate_candidates(fields, 4, zetas=zetas), fields)


ACCEPTANCE = {}


def record(number, passed, detail):
    ACCEPTANCE[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}: {detail}")
