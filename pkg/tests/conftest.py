import math
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from shiftinv import Distribution, GroupSpec  # noqa: E402

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    def _report(number: int, title: str, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:2d}: {title}" + (f"  ({detail})" if detail else ""))

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def group_specs(draw, max_order=64, max_rank=3):
    rank = draw(st.integers(1, max_rank))
    orders = []
    for _ in range(rank):
        room = max_order // max(1, math.prod(orders))
        orders.append(draw(st.integers(1, max(1, min(12, room)))))
    return GroupSpec(tuple(orders))


@st.composite
def laws(draw, spec, max_weight=5):
    weights = draw(st.lists(st.integers(0, max_weight), min_size=spec.order, max_size=spec.order))
    if not any(weights):
        weights[draw(st.integers(0, spec.order - 1))] = 1
    total = sum(weights)
    return Distribution.from_vector(spec, [Fraction(w, total) for w in weights])


@st.composite
def spec_and_law(draw, max_order=64):
    spec = draw(group_specs(max_order=max_order))
    return spec, draw(laws(spec))


@st.composite
def spec_and_two_laws(draw, max_order=64):
    spec = draw(group_specs(max_order=max_order))
    return spec, draw(laws(spec)), draw(laws(spec))
