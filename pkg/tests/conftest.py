import numpy as np
import pytest
from hypothesis import strategies as st

from qclutch.algebra import CIRCLE, TOEPLITZ, Element

T, C = TOEPLITZ, CIRCLE


def shift(N):
    """Truncated unilateral shift on C^N, independent of the package representation."""
    return np.eye(N, k=-1, dtype=complex)


def gaussian_int(bound=3):
    return st.builds(complex, st.integers(-bound, bound), st.integers(-bound, bound))


def _word(kind):
    if kind is T:
        return st.tuples(st.integers(0, 3), st.integers(0, 3))
    return st.integers(-3, 3)


def elements(signature, max_terms=3):
    word = st.tuples(*(_word(k) for k in signature))
    pairs = st.lists(st.tuples(word, st.integers(-3, 3), st.integers(-3, 3)), max_size=max_terms)

    def build(items):
        from qclutch.scalars import GaussianRational

        terms = {}
        for w, a, b in items:
            terms[w] = terms.get(w, GaussianRational(0)) + GaussianRational(a, b)
        return Element(signature, terms)

    return pairs.map(build)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
