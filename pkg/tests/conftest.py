import numpy as np
import pytest
from hypothesis import settings, strategies as st

from penning_cs.model import PenningModel
from penning_cs.trap import TrapParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

REF_B, REF_V = 1.0, -0.5


@st.composite
def stable_params(draw, b_min=0.2, b_max=3.0):
    """(b, v) inside the trap region, kept away from the degenerate edge."""
    b = draw(st.floats(b_min, b_max))
    frac = draw(st.floats(0.05, 0.95))
    return TrapParams(b, -frac * b * b)


def complex_in_disc(radius=1.0):
    return st.builds(
        lambda r, phi: r * np.exp(1j * phi),
        st.floats(0.0, radius),
        st.floats(0.0, 2 * np.pi),
    )


z_triples = st.tuples(complex_in_disc(), complex_in_disc(), complex_in_disc())


def random_stable(rng, n):
    b = rng.uniform(0.2, 3.0, n)
    frac = rng.uniform(0.05, 0.95, n)
    return [TrapParams(float(bi), float(-fi * bi * bi)) for bi, fi in zip(b, frac)]


def random_z(rng, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0, 1, 3))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, 3))


@pytest.fixture(scope="session")
def ref_model():
    return PenningModel.from_params(REF_B, REF_V)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
