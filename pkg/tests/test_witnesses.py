import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointloc import metric_space as ms
from jointloc import observables as ob
from jointloc import operator_core as oc
from jointloc import witnesses as wt
from jointloc.verification import random_instance
from jointloc.widths import overall_width



def uniform(space):
    return ob.ProbabilityDistribution(space, np.full(space.size, 1 / space.size))


@pytest.mark.parametrize("dim", [1, 2, 3, 5])
def test_resource_reduced_states(dim):
    r = wt.maximally_entangled(dim)
    assert np.linalg.norm(r.vector) == pytest.approx(1.0)
    for red in (oc.partial_trace_first(r.projector, dim, dim), oc.partial_trace_second(r.projector, dim, dim)):
        np.testing.assert_allclose(red, np.eye(dim) / dim, atol=1e-10)


def test_gamma_examples():
    np.testing.assert_array_equal(wt.gamma(np.eye(3)), np.eye(3))
    p = np.full((2, 2), 0.5)
    np.testing.assert_array_equal(wt.gamma(p), p)
    e01 = np.array([[0, 1], [0, 0]])
    np.testing.assert_array_equal(wt.gamma(e01), e01.T)
    z0 = np.diag([1.0, 0.0])
    np.testing.assert_array_equal(wt.gamma(z0), z0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_gamma_duality(seed, dim):
    rng = np.random.default_rng(seed)
    rho = ob.random_state(dim, rng)
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    assert abs(np.trace(rho @ wt.gamma(x)) - np.trace(wt.gamma_star(rho) @ x)) <= 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_gamma_maps_pvm_to_pvm(seed):
    a = ob.random_pvm(4, 3, seed)
    ob.Pvm(a.space, np.array([wt.gamma(e) for e in a.elements]))


def test_preparation_ensemble_qubit(qubit_zx):
    r = wt.maximally_entangled(2)
    for f in qubit_zx:
        ens = wt.preparation_ensemble(f, r)
        assert [p for _, p, _ in ens] == pytest.approx([0.5, 0.5])
        for x, _, rho in ens:
            np.testing.assert_allclose(rho, f.elements[x], atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_preparation_ensemble_properties(seed):
    dim = 2 + seed % 4
    f = ob.random_pvm(dim, min(dim, 3), seed)
    ens = wt.preparation_ensemble(f, wt.maximally_entangled(dim))
    mix = sum(p * rho for _, p, rho in ens)
    np.testing.assert_allclose(mix, np.eye(dim) / dim, atol=1e-9)
    for x, _, rho in ens:
        assert ob.induced_distribution(rho, f).weights[x] == pytest.approx(1.0, abs=1e-9)


def test_posterior_records_trivial(qubit_zx):
    z, x = qubit_zx
    m = ob.family_trivial(z, uniform(x.space))
    recs = wt.posterior_records(m, wt.maximally_entangled(2), z, x)
    assert len(recs) == 4
    for rec in recs:
        assert rec.probability == pytest.approx(0.25)
        np.testing.assert_allclose(rec.witness, z.elements[rec.outcome[0]], atol=1e-12)


def test_posterior_records_identity_element():
    m = ob.JointPovm(ms.discrete(2), ms.discrete(3), np.array([[np.eye(3) / 6] * 3] * 2))
    for rec in wt.posterior_records(m, wt.maximally_entangled(3)):
        np.testing.assert_allclose(rec.theta, np.eye(3) / 3, atol=1e-12)
        np.testing.assert_allclose(rec.witness, np.eye(3) / 3, atol=1e-12)


@pytest.mark.parametrize("seed", range(12))
def test_posterior_record_invariants(seed):
    dim = 2 + seed % 4
    inst = random_instance(dim, seed)
    a, b, m = inst.a, inst.b, inst.m
    res = wt.maximally_entangled(dim)
    recs = wt.posterior_records(m, res, a, b)
    assert sum(r.probability for r in recs) == pytest.approx(1.0, abs=1e-9)
    ens = {x: (p, rho) for x, p, rho in wt.preparation_ensemble(a, res)}
    for rec in recs:
        x_, y_ = rec.outcome
        assert rec.probability == pytest.approx(np.vdot(res.vector, oc.tensor(np.eye(dim), m.elements[x_, y_]) @ res.vector).real, abs=1e-10)
        oc.check_density(rec.theta)
        oc.check_density(rec.witness)
        np.testing.assert_allclose(rec.posterior_a, ob.induced_distribution(rec.witness, a).weights, atol=1e-9)
        np.testing.assert_allclose(rec.posterior_b, ob.induced_distribution(rec.witness, b).weights, atol=1e-9)
        # Bayes: p(x'y'|x) p(x) = p(x'y') p(x|x'y')
        for x, (p, rho) in ens.items():
            lik = np.trace(rho @ m.elements[x_, y_]).real
            assert lik * p == pytest.approx(rec.probability * rec.posterior_a[x], abs=1e-10)


def test_theorem1_witness_trivial(qubit_zx):
    z, x = qubit_zx
    m = ob.family_trivial(z, uniform(x.space))
    w = wt.theorem1_witness(z, x, m, 0.1, 0.1)
    assert w.record.outcome == (0, 0)
    np.testing.assert_allclose(w.state, z.elements[0], atol=1e-12)
    assert (w.width_a, w.width_b) == (0.0, 2.0)
    pz, px = wt.witness_distributions(w.state, z, x)
    assert overall_width(pz, 0.2).width == 0.0
    assert overall_width(px, 0.2).width == 2.0


def test_theorem1_witness_compatible_pair():
    a = ob.random_pvm(3, 3, 4)
    w = wt.theorem1_witness(a, a, ob.family_smeared(a, a), 0.0, 0.0)
    assert (w.width_a, w.width_b) == (0.0, 0.0)
    for p in wt.witness_distributions(w.state, a, a):
        assert overall_width(p, 0.0).width == 0.0


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("eps", [(0.0, 0.0), (0.1, 0.25), (0.25, 0.25)])
def test_theorem1_witness_ball_sum(seed, eps):
    inst = random_instance(2 + seed % 4, seed)
    w = wt.theorem1_witness(inst.a, inst.b, inst.m, *eps)
    assert w.ball_sum >= 2 - sum(eps) - 1e-9


def test_theorem1_witness_rejects_large_eps(qubit_zx):
    z, x = qubit_zx
    with pytest.raises(ValueError):
        wt.theorem1_witness(z, x, ob.family_smeared(z, x), 0.6, 0.6)
