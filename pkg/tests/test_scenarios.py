import math

import numpy as np
import pytest

from jointloc import observables as ob
from jointloc import operator_core as oc
from jointloc import scenarios as sc
from jointloc.errors import DimensionTooLarge
from jointloc.widths import overall_width

BOUND = 1 + 1 / math.sqrt(2)


@pytest.fixture(scope="module")
def qubit_bundle():
    return sc.qubit_scenario(n_states=2000, n_family=17)


def test_qubit_bundle_passes(qubit_bundle):
    assert qubit_bundle.passed
    assert qubit_bundle.summary["bound"] == BOUND


def test_qubit_bloch_state_attains_bound(qubit_bundle):
    # cos^2(pi/8) for each basis
    assert qubit_bundle.summary["bloch_sum"] == pytest.approx(2 * math.cos(math.pi / 8) ** 2, abs=1e-12)
    assert qubit_bundle.summary["bloch_sum"] == pytest.approx(BOUND, abs=1e-9)
    assert qubit_bundle.summary["sweep_max"] <= BOUND + 1e-9


def test_qubit_measurement_sum_examples():
    z, x = sc.qubit_observables()
    s1, s2 = sc.measurement_sum(ob.family_qubit_covariant(1, 0), z, x)
    assert s1 + s2 == pytest.approx(1.5)
    s = 2**-0.5
    s1, s2 = sc.measurement_sum(ob.family_qubit_covariant(s, s), z, x)
    assert s1 + s2 == pytest.approx(BOUND)


def test_qubit_scenario_deterministic():
    a = sc.qubit_scenario(n_states=300, n_family=5, seed=4)
    b = sc.qubit_scenario(n_states=300, n_family=5, seed=4)
    assert [r.to_dict() for r in a.reports] == [r.to_dict() for r in b.reports]


def test_weyl_pair():
    for n in range(2, 9):
        u, v = sc.weyl_pair(n)
        np.testing.assert_allclose(u @ v, np.exp(2j * np.pi / n) * v @ u, atol=1e-12)


def test_torus_overlap_n4():
    q, p = sc.torus_observables(4)
    traces = [np.trace(a @ b).real for a in q.elements for b in p.elements]
    np.testing.assert_allclose(traces, 0.25, atol=1e-15)


def test_torus_point_state_full_cover():
    n = 5
    q, p = sc.torus_observables(n)
    rho = oc.pure_state(np.eye(n)[0])
    wq = overall_width(ob.induced_distribution(rho, q), 0.0).width
    wp = overall_width(ob.induced_distribution(rho, p), 0.0).width
    assert wq == 0.0
    assert wp == pytest.approx(2 * q.space.diameter)
    assert sc.torus_lhs(wq, wp, n, 2 * math.pi / n) >= sc.torus_rhs(n, 0, 0)
    assert sc.torus_rhs(n, 0.5, 0.5) == 0.0


@pytest.mark.parametrize("n", [2, 3, 6])
def test_torus_scenario_small(n):
    b = sc.torus_scenario(n, n_states=40)
    assert b.passed
    assert b.summary["max_pairwise_trace"] == pytest.approx(1 / n)
    assert {"torus_localization", "torus_errorbar", "mutually_unbiased", "weyl_relation"} <= {r.name for r in b.reports}
    assert all(r.informational for r in b.reports if r.name.endswith("printed_constant"))


def test_torus_rejects_tiny():
    with pytest.raises(ValueError):
        sc.torus_scenario(1)


def test_nqubit_helpers():
    assert sc.clamped_entropy(0.75) == 1.0
    assert sc.clamped_entropy(0.25) == pytest.approx(0.8112781244591328)
    assert sc.entropy_rhs(2, 0.5, 0.5) == -math.inf
    assert sc.entropy_rhs(2, 0.0, 0.0) == 1.0


def test_nqubit_zero_state():
    z, x = sc.nqubit_observables(2)
    rho = oc.pure_state([1, 0, 0, 0])
    wz = overall_width(ob.induced_distribution(rho, z), 0.0).width
    wx = overall_width(ob.induced_distribution(rho, x), 0.0).width
    np.testing.assert_allclose(ob.induced_distribution(rho, x).weights, 0.25)
    assert wz == 0.0 and wx == 1.0
    assert sc.clamped_entropy(wz) + sc.clamped_entropy(wx) == 1.0


def test_nqubit_uniform_both_sides():
    # the maximally mixed state is uniform in both bases
    z, x = sc.nqubit_observables(2)
    rho = np.eye(4) / 4
    lhs = sum(sc.clamped_entropy(overall_width(ob.induced_distribution(rho, f), 0.0).width) for f in (z, x))
    assert lhs == 2.0


@pytest.mark.parametrize("n", [2, 3])
def test_nqubit_scenario(n):
    b = sc.nqubit_scenario(n, n_states=50)
    assert b.passed
    assert b.summary["max_pairwise_trace"] == 2.0**-n
    assert {"nqubit_entropy", "nqubit_entropy_errorbar"} == {r.name for r in b.reports}


def test_nqubit_limit():
    with pytest.raises(DimensionTooLarge):
        sc.nqubit_scenario(4)


def test_ghz():
    g = sc.ghz_state(3)
    assert np.trace(g).real == pytest.approx(1.0)
    assert g[0, 7] == pytest.approx(0.5)


def test_c3_scenario():
    b = sc.c3_scenario()
    assert b.passed
    assert b.summary["block_overlap_max"] == 0.5 == b.summary["block_overlap_min"]
    assert b.summary["norm_A0B0"] == pytest.approx(1.0)
    lp = b.tightest("landau_pollak")
    assert lp.lhs == pytest.approx(2.0)


def test_bundle_tightest_missing():
    assert sc.ScenarioBundle("x").tightest("nothing") is None
