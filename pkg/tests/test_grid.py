import numpy as np
import pytest
from hypothesis import given, strategies as st

from frontspec.errors import DomainError
from frontspec.grid import Grid, GridFunction


def test_nodes_symmetric_and_exact():
    g = Grid(20.0, 4001)
    x = g.nodes
    assert x[g.mid] == 0.0 and x[0] == -20.0 and x[-1] == 20.0
    assert g.h == pytest.approx(0.01)
    assert np.allclose(x, -x[::-1], atol=1e-12)


@pytest.mark.parametrize("N", [4, 3, 100])
def test_rejects_even_or_small(N):
    with pytest.raises(DomainError):
        Grid(1.0, N)


def test_rejects_nonpositive_L():
    with pytest.raises(DomainError):
        Grid(0.0, 11)


def test_spectral_minimum():
    with pytest.raises(DomainError):
        Grid(5.0, 51).require_spectral()
    Grid(5.0, 101).require_spectral()


@given(st.floats(0.1, 100), st.integers(2, 2000))
def test_refined_halves_spacing(L, k):
    g = Grid(L, 2 * k + 1)
    assert g.refined().h == pytest.approx(g.h / 2)
    assert np.allclose(g.refined().nodes[::2], g.nodes, atol=1e-12 * L)


def test_interior_and_scaled():
    g = Grid(2.0, 21)
    assert np.allclose(g.interior().nodes, g.nodes[1:-1])
    assert np.allclose(g.scaled(0.5).nodes, 0.5 * g.nodes)


def test_gridfunction_norm():
    g = Grid(10.0, 2001)
    u = GridFunction.sample(lambda x: np.exp(-x ** 2 / 2), g)
    assert u.norm() == pytest.approx(np.pi ** 0.25, rel=1e-8)
    with pytest.raises(DomainError):
        GridFunction(g, np.zeros(5))
