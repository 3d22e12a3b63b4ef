import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from artinapprox.exactfield import QQ, NumberField
from artinapprox.multipoly import PolyRing

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SYSTEMS = Path(__file__).parent.parent / "systems"

SQRT2 = NumberField([-2, 0, 1])
CBRT2 = NumberField([-2, 0, 0, 1])

small_fractions = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 5)
)


def nf_elems(field):
    return st.lists(small_fractions, min_size=field.degree, max_size=field.degree).map(
        lambda cs: field.from_coeffs(cs)
    )


@st.composite
def polys(draw, ring, max_terms=4, max_deg=3, coeffs=small_fractions):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = [0] * ring.nvars
        budget = draw(st.integers(0, max_deg))
        for _ in range(budget):
            exp[draw(st.integers(0, ring.nvars - 1))] += 1
        terms[tuple(exp)] = draw(coeffs)
    return ring.from_dict(terms)


@pytest.fixture
def R2():
    return PolyRing(["y0", "y1"], QQ)


@pytest.fixture
def R3():
    return PolyRing(["y0", "y1", "y2"], QQ)


@pytest.fixture
def systems_dir():
    return SYSTEMS


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
