"""Shared fixtures and hypothesis strategies for the simulator tests."""

from __future__ import annotations

import pytest
from hypothesis import strategies as st

from mvpsim import AxisLadderMachine, BitMatrix, BitVector, WallLightMachine

BACKEND_CLASSES = (AxisLadderMachine, WallLightMachine)


# Session scope: the value is a class, safe to share, and hypothesis
# forbids function-scoped fixtures inside @given tests.
@pytest.fixture(params=BACKEND_CLASSES, ids=lambda cls: cls.backend, scope="session")
def machine_cls(request):
    """Both machine backends; contract tests must hold for each."""
    return request.param


def bit_vectors(n: int) -> st.SearchStrategy[BitVector]:
    return st.tuples(*([st.sampled_from((0, 1))] * n)).map(BitVector)


def bit_matrices(n: int) -> st.SearchStrategy[BitMatrix]:
    row = st.tuples(*([st.sampled_from((0, 1))] * n))
    return st.tuples(*([row] * n)).map(BitMatrix)


@st.composite
def matrix_vector_pairs(draw, max_n: int = 6) -> tuple[BitMatrix, BitVector]:
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(bit_matrices(n)), draw(bit_vectors(n))


@st.composite
def matrix_pairs(draw, max_n: int = 5) -> tuple[BitMatrix, BitMatrix]:
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(bit_matrices(n)), draw(bit_matrices(n))
