from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from linftile.core import Q
from linftile.embedding import NormedSpace, NormingSet, build_pairs

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


def rationals(bound: int = 16, max_den: int = 64):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=max_den).map(Q)


def dyadic_heavy(bound: int = 16):
    """Rationals with a good chance of sitting exactly on +-2^n or 0."""
    faces = st.sampled_from([Fraction(s * 2**n) for n in range(5) for s in (1, -1)] + [Fraction(0)])
    return st.one_of(faces, st.fractions(min_value=-bound, max_value=bound, max_denominator=64)).map(Q)


def points(dim: int, elements=None):
    return st.tuples(*[rationals() if elements is None else elements for _ in range(dim)])


@pytest.fixture(scope="session")
def models():
    """Pairs built once per session for sup and l1 spaces, d = 1..6."""
    out = {}
    for kind in ("sup", "ell1"):
        for d in range(1, 7):
            space = getattr(NormedSpace, kind)(d)
            norming = NormingSet.standard(space)
            out[kind, d] = (build_pairs(space, norming), norming)
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
