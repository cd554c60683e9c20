from functools import lru_cache

import pytest

from jonesbm.corpus import jones_pairs
from jonesbm.nomura import nomura_single
from jonesbm.yamada import YamadaContext, bm_space, build_v, nw_spaces

PAIRS = {p.name: p for p in jones_pairs()}
SMALL = ("trivial", "potts2", "circ3")


@lru_cache(maxsize=None)
def context(name: str) -> YamadaContext:
    p = PAIRS[name]
    return YamadaContext(p.A, p.B)


@lru_cache(maxsize=None)
def v_matrix(name: str):
    return build_v(context(name))


@lru_cache(maxsize=None)
def nv(name: str):
    return nomura_single(v_matrix(name))


@lru_cache(maxsize=None)
def bm(name: str):
    return bm_space(context(name))


@lru_cache(maxsize=None)
def nw(name: str):
    return nw_spaces(context(name))


@pytest.fixture(params=sorted(PAIRS))
def ctx_name(request):
    return request.param


@pytest.fixture(params=SMALL)
def small_name(request):
    return request.param


# acceptance criteria report: one line per criterion, printed after the run
CRITERIA: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> bool:
    CRITERIA[number] = (ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
