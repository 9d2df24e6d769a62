import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointloc import metric_space as ms
from jointloc import observables as ob
from jointloc.errors import IncompatibleSpaces
from oracles import oracle_errorbar_width

from jointloc.widths import (
    binary_entropy,
    errorbar_width,
    localization_error,
    overall_width,
    worst_case_mass,
)

EPS_FINE = np.round(np.arange(0, 1.0, 0.05), 2)


def dist(space, w):
    return ob.ProbabilityDistribution(space, w)


def brute_overall_width(p, eps):
    # scan every ball at every candidate width
    space = p.space
    for w in space.candidate_widths():
        for x in range(space.size):
            if sum(p.weights[y] for y in space.ball(x, w)) >= 1 - eps - 1e-12:
                return w
    return None


@pytest.mark.parametrize(
    "space, weights, eps, expected",
    [
        (ms.discrete(2), [1, 0], 0.0, 0.0),
        (ms.discrete(2), [0.5, 0.5], 0.0, 2.0),
        (ms.cyclic(4, math.pi / 2), [0.6, 0.2, 0, 0.2], 0.25, math.pi),
    ],
)
def test_overall_width_examples(space, weights, eps, expected):
    p = dist(space, weights)
    assert overall_width(p, eps).width == pytest.approx(expected, abs=1e-12)
    assert overall_width(p, eps).width == pytest.approx(brute_overall_width(p, eps))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_overall_width_matches_brute_force_and_is_monotone(seed, n):
    rng = np.random.default_rng(seed)
    space = ms.random_space(n, seed)
    p = dist(space, rng.dirichlet(np.ones(n)))
    widths = [overall_width(p, e).width for e in EPS_FINE]
    assert all(a >= b for a, b in zip(widths, widths[1:]))
    for e, w in zip(EPS_FINE[::4], widths[::4]):
        assert w == brute_overall_width(p, e)
        assert w in space.candidate_widths()


def test_errorbar_exact_marginal_is_zero(qubit_zx):
    z, _ = qubit_zx
    for e in (0.0, 0.3, 1.0):
        assert errorbar_width(z, z, e).width == 0.0


def test_errorbar_trivial_examples(qubit_zx):
    _, x = qubit_zx
    m2 = ob.Povm(x.space, np.array([np.eye(2) / 2] * 2))
    assert errorbar_width(m2, x, 0.25).width == 2.0
    assert errorbar_width(m2, x, 0.25).worst_case_probability == pytest.approx(1.0)
    assert errorbar_width(m2, x, 0.6).width == 0.0
    assert worst_case_mass(m2, x, 0, 0.0) == pytest.approx(0.5)


def test_errorbar_incompatible(qubit_zx):
    z, _ = qubit_zx
    other = ob.computational_pvm(2, ms.cyclic(2, 3.0))
    with pytest.raises(IncompatibleSpaces):
        errorbar_width(other, z, 0.1)
    with pytest.raises(IncompatibleSpaces):
        errorbar_width(ob.random_pvm(3, 2, 0), z, 0.1)


def test_errorbar_skips_zero_outcome():
    # outcome 2 has a zero projection and must not influence the result
    e = ob.Pvm(ms.discrete(3), np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), np.zeros((2, 2))]))
    assert errorbar_width(e, e, 0.0).width == 0.0


def random_setup(seed, dim, n):
    space = ms.random_space(n, seed)
    e = ob.random_pvm(dim, n, seed, space)
    m1, _ = ob.random_joint_povm(dim, space, ms.discrete(2), seed + 1).marginals()
    return space, e, m1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(2, 4))
def test_errorbar_monotone_in_eps(seed, dim, n):
    n = min(n, dim)
    _, e, m1 = random_setup(seed, dim, n)
    widths = [errorbar_width(m1, e, eps).width for eps in EPS_FINE]
    assert all(a >= b for a, b in zip(widths, widths[1:]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.sampled_from([0.0, 0.1, 0.25, 0.5]))
def test_errorbar_definition_consistency(seed, dim, eps):
    space, e, m1 = random_setup(seed, dim, 2)
    w = errorbar_width(m1, e, eps).width
    rng = np.random.default_rng(seed)
    for x in range(space.size):
        v = e.range_basis(x)
        for _ in range(5):
            g = v @ (rng.standard_normal((v.shape[1], 2)) + 1j * rng.standard_normal((v.shape[1], 2)))
            rho = g @ g.conj().T
            rho /= np.trace(rho).real
            assert ob.induced_distribution(rho, e).weights[x] == pytest.approx(1.0, abs=1e-9)
            p = ob.induced_distribution(rho, m1)
            assert p.mass(space.ball(x, w)) >= 1 - eps - 1e-9
            # the error-bar width dominates the overall width of any such state
            assert w >= overall_width(p, eps).width - 1e-12


def grid_step_distance(space, w1, w2):
    grid = list(space.candidate_widths())
    return abs(grid.index(w1) - grid.index(w2))


@pytest.mark.parametrize("seed", range(20))
def test_errorbar_oracle_equivalence(seed):
    rng = np.random.default_rng(1000 + seed)
    dim = int(rng.integers(2, 4))
    n = int(rng.integers(2, dim + 1))
    space, e, m1 = random_setup(seed, dim, n)
    for eps in (0.0, 0.1, 0.25, 0.5):
        got = errorbar_width(m1, e, eps).width
        want = oracle_errorbar_width(m1, e, eps)
        assert grid_step_distance(space, got, want) <= 1
        # the grid only sees states the eigenvalue method also covers
        assert want <= got


def test_localization_error_examples():
    assert localization_error(dist(ms.discrete(3), [1, 0, 0])) == 0.0
    assert localization_error(dist(ms.discrete(4), [0.25] * 4)) == pytest.approx(0.75)
    assert localization_error(dist(ms.discrete(2), [0.7, 0.3])) == pytest.approx(0.3)


def test_binary_entropy_examples():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.25) == pytest.approx(-0.25 * math.log2(0.25) - 0.75 * math.log2(0.75))
    assert binary_entropy(0.25) == pytest.approx(0.81128, abs=1e-5)
    with pytest.raises(ValueError):
        binary_entropy(1.5)


@given(st.floats(0, 1))
def test_binary_entropy_symmetric(w):
    assert binary_entropy(w) == pytest.approx(binary_entropy(1 - w), abs=1e-12)
    assert 0.0 <= binary_entropy(w) <= 1.0
