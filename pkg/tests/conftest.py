import json
import pathlib
import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mutlab import Quiver
from mutlab.laurent import MultiPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def figure_data():
    return json.loads((DATA / "figure1.json").read_text())


@st.composite
def quivers(draw, max_vertices=6, max_mult=2, max_frozen=2):
    """Random quivers given by an upper-triangular skew pattern."""
    n = draw(st.integers(1, max_vertices))
    nf = draw(st.integers(0, max_frozen))
    m = n + nf
    arrows = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            w = draw(st.integers(-max_mult, max_mult))
            arrows += [(i, j)] * w if w > 0 else [(j, i)] * (-w)
    return Quiver(n, nf, arrows)


@st.composite
def polys(draw, nvars=3, max_terms=5, max_exp=3, max_coeff=20):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * nvars),
            st.integers(-max_coeff, max_coeff),
            max_size=max_terms,
        )
    )
    return MultiPoly(terms, nvars)


def random_quiver(rng: random.Random, n, nf=0, max_mult=2, density=0.6):
    m = n + nf
    arrows = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if rng.random() < density:
                w = rng.randint(1, max_mult)
                arrows += [(i, j) if rng.random() < 0.5 else (j, i)] * w
    return Quiver(n, nf, arrows)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
