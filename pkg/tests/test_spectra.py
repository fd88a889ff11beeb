import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ricci_arg import graph as gc
from ricci_arg.spectra import (
    _round_robin,
    adjacency_spectrum,
    eigensolve,
    extremes,
    lambda_min,
    local_spectrum,
    signed_laplacian_spectrum,
    symmetric,
)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 7, 16])
def test_round_robin_covers_each_pair_once(n):
    seen = []
    for p, q in _round_robin(n):
        used = list(p) + list(q)
        assert len(used) == len(set(used))  # disjoint within a round
        seen += list(zip(p.tolist(), q.tolist()))
    assert sorted(seen) == list(itertools.combinations(range(n), 2))


@pytest.mark.parametrize("n", [2, 5, 16, 40, 70])
def test_eigensolve_matches_lapack(n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal((n, n))
    m = x + x.T
    spec = eigensolve(m, vectors=True)
    assert np.max(np.abs(spec.eigenvalues - np.linalg.eigvalsh(m))) < 1e-10
    assert spec.residual < 1e-10
    v = spec.vectors
    assert np.max(np.abs(v.T @ v - np.eye(n))) < 1e-10


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, (6, 6), elements=st.floats(-100, 100, allow_nan=False)))
def test_eigensolve_property(a):
    m = symmetric(a)
    w = eigensolve(m).eigenvalues
    ref = np.linalg.eigvalsh(m)
    assert np.max(np.abs(w - ref)) <= 1e-9 * max(1.0, np.abs(ref).max())
    assert np.all(np.diff(w) >= 0)


def test_eigensolve_degenerate_inputs():
    assert eigensolve(np.zeros((3, 3))).eigenvalues.tolist() == [0.0, 0.0, 0.0]
    assert eigensolve([[5.0]]).eigenvalues.tolist() == [5.0]
    assert eigensolve(np.diag([3.0, -1.0, 2.0])).eigenvalues.tolist() == [-1.0, 2.0, 3.0]
    assert lambda_min([[2.0, 1.0], [1.0, 2.0]]) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        eigensolve([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        eigensolve(np.zeros((2, 3)))


def test_symmetric_mirrors_upper_triangle():
    assert symmetric([[1, 2], [99, 3]]).tolist() == [[1, 2], [2, 3]]


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_hypercube_spectrum(d):
    # eigenvalues d - 2i with multiplicity C(d, i)
    w = adjacency_spectrum(gc.hypercube(d)).eigenvalues
    expected = sorted(v for i in range(d + 1) for v in [d - 2 * i] * math.comb(d, i))
    assert np.max(np.abs(w - expected)) < 1e-9


def test_named_spectra():
    pet = extremes(adjacency_spectrum(gc.petersen()))
    assert (pet.theta_1, pet.theta_second, pet.theta_n) == pytest.approx((-2, 1, 3), abs=1e-9)
    j = extremes(adjacency_spectrum(gc.johnson(8, 4)))
    assert (j.theta_1, j.theta_second, j.theta_n) == pytest.approx((-4, 8, 16), abs=1e-9)
    sh = extremes(adjacency_spectrum(gc.shrikhande()))
    assert (sh.theta_1, sh.theta_second, sh.theta_n) == pytest.approx((-2, 2, 6), abs=1e-9)


def test_local_spectrum_of_shrikhande_is_hexagon():
    w = local_spectrum(gc.shrikhande(), 5).eigenvalues
    assert w == pytest.approx([-2, -1, -1, 1, 1, 2], abs=1e-12)


def test_signed_laplacian_balanced_kernel():
    c6, c5 = gc.cycle(6), gc.cycle(5)
    plus = signed_laplacian_spectrum(c6, lambda u, v: 1).eigenvalues
    minus_bip = signed_laplacian_spectrum(c6, lambda u, v: -1).eigenvalues
    minus_odd = signed_laplacian_spectrum(c5, lambda u, v: -1).eigenvalues
    assert plus[0] == pytest.approx(0, abs=1e-12)
    assert minus_bip[0] == pytest.approx(0, abs=1e-12)  # bipartite: all -1 is balanced
    assert minus_odd[0] > 0.1
