import math

import numpy as np
import pytest

import catamp as ca
from catamp import oracle


class TestBuildInitial:
    def test_vacuum_cats(self):
        state = oracle.build_initial(ca.CatSpec.even(0.0), ca.CatSpec.even(0.0), 6, 6)
        expect = np.zeros((36, 36))
        expect[0, 0] = 1.0
        assert np.allclose(state.rho, expect)

    def test_pure_and_normalized(self):
        state = oracle.build_initial(ca.CatSpec.even(1.2), ca.CatSpec.odd(0.9), 24, 24)
        assert state.trace() == pytest.approx(1.0, abs=1e-12)
        assert state.purity() == pytest.approx(1.0, abs=1e-12)

    def test_even_cat_mean_photon(self):
        state = oracle.build_initial(ca.CatSpec.even(1.0), ca.CatSpec.even(0.0), 24, 4)
        mean = oracle.fock_moment(state, 1, 1, 0, 0).real
        assert mean == pytest.approx(math.tanh(1.0), rel=1e-12)

    def test_dim_too_small(self):
        with pytest.raises(oracle.DimTooSmall):
            oracle.build_initial(ca.CatSpec.even(2.5), ca.CatSpec.even(0.5), 8, 8)


class TestEvolve:
    def test_vacuum_two_mode_squeezing(self):
        params = ca.AmplifierParams(g=1.0, pump_phase=0.4)
        state = oracle.build_initial(ca.CatSpec.even(0.0), ca.CatSpec.even(0.0), 18, 18)
        evolved = oracle.evolve(state, params, 0.6)
        mean = oracle.fock_moment(evolved, 1, 1, 0, 0).real
        assert mean == pytest.approx(math.sinh(0.6) ** 2, rel=1e-8)
        assert evolved.purity() == pytest.approx(1.0, abs=1e-8)

    def test_pure_decay(self):
        params = ca.AmplifierParams(g=0.0, gamma1=0.8, gamma2=0.8)
        state = oracle.build_initial(ca.CatSpec.even(1.0), ca.CatSpec.even(0.8), 20, 18)
        n0 = oracle.fock_moment(state, 1, 1, 0, 0).real
        evolved = oracle.evolve(state, params, 0.9)
        n1 = oracle.fock_moment(evolved, 1, 1, 0, 0).real
        assert n1 == pytest.approx(n0 * math.exp(-0.8 * 0.9), rel=1e-8)

    def test_thermal_fixed_point(self):
        nbar = 0.6
        params = ca.AmplifierParams(g=0.0, gamma1=2.5, gamma2=2.5, nbar1=nbar)
        state = oracle.build_initial(ca.CatSpec.even(0.7), ca.CatSpec.even(0.0), 22, 3)
        evolved = oracle.evolve(state, params, 6.0)
        p1 = oracle.pnd_single(evolved, 1)
        n = np.arange(len(p1))
        thermal = (nbar / (1 + nbar)) ** n / (1 + nbar)
        # fidelity of the diagonal distributions
        assert float(np.sum(np.sqrt(np.clip(p1, 0, None) * thermal)) ** 2) > 1 - 1e-6
        assert oracle.fock_moment(evolved, 1, 1, 0, 0).real == pytest.approx(nbar, abs=1e-5)

    def test_trace_hermiticity_positivity(self):
        params = ca.AmplifierParams(g=1.0, pump_phase=1.0, gamma1=1.2, gamma2=0.6,
                                    nbar1=0.5, nbar2=0.2)
        state = oracle.build_initial(ca.CatSpec.even(0.9), ca.CatSpec.yurke_stoler(0.7),
                                     20, 20)
        evolved = oracle.evolve(state, params, 0.5)
        assert evolved.trace() == pytest.approx(1.0, abs=1e-10)
        assert np.max(np.abs(evolved.rho - evolved.rho.conj().T)) < 1e-12
        assert np.linalg.eigvalsh(evolved.rho).min() > -1e-10

    def test_step_doubling_convergence(self):
        # halving the step leaves observables unchanged at the 1e-8 level
        params = ca.AmplifierParams(g=1.0, pump_phase=0.7, gamma1=1.5, gamma2=1.5,
                                    nbar1=0.4, nbar2=0.4)
        state = oracle.build_initial(ca.CatSpec.even(0.8), ca.CatSpec.even(0.6), 16, 16)
        coarse = oracle.evolve(state, params, 0.3)
        fine = oracle.evolve(oracle.evolve(state, params, 0.15), params, 0.15)
        # two half-interval runs use half-sized final steps; compare observables
        for getter in (lambda s: oracle.fock_moment(s, 1, 1, 0, 0).real,
                       lambda s: oracle.pnd_sum(s)[0],
                       lambda s: oracle.squeeze_factors(s)["Q"]):
            assert getter(coarse) == pytest.approx(getter(fine), abs=1e-8)


class TestObservables:
    def test_vacuum_variances(self):
        state = oracle.build_initial(ca.CatSpec.even(0.0), ca.CatSpec.even(0.0), 8, 8)
        v = oracle.quadrature_variances(state)
        assert v["x1"] == pytest.approx(0.25, abs=1e-12)
        assert v["y1"] == pytest.approx(0.25, abs=1e-12)
        sf = oracle.squeeze_factors(state)
        assert all(abs(val) < 1e-12 for val in sf.values())

    def test_sum_pnd_of_fock_pair(self):
        # |1> (x) |1> has its entire mass at total n = 2
        state = oracle.build_initial(ca.CatSpec.even(0.0), ca.CatSpec.even(0.0), 6, 6)
        rho = np.zeros_like(state.rho)
        idx = 1 * 6 + 1
        rho[idx, idx] = 1.0
        fock = oracle.FockState(6, 6, rho)
        p = oracle.pnd_sum(fock)
        assert p[2] == pytest.approx(1.0)
        assert float(np.sum(p)) == pytest.approx(1.0)

    def test_wigner_origin_even_cat(self):
        state = oracle.build_initial(ca.CatSpec.even(1.0), ca.CatSpec.even(0.0), 24, 4)
        got = oracle.wigner(state, 0j)
        n2 = 2.0 * (1.0 + math.exp(-2.0))
        expect = (2.0 / math.pi) * (2.0 * math.exp(-2.0) + 2.0) / n2
        assert got == pytest.approx(expect, rel=1e-10)

    def test_factorial_moment_poisson(self):
        # coherent-state falling factorials are powers of the mean
        state = oracle.build_initial(ca.CatSpec.even(0.0), ca.CatSpec.even(0.0), 20, 4)
        alpha = 1.1
        v = oracle._coherent_vec(alpha, 20)
        rho1 = np.outer(v, v.conj())
        rho = np.kron(rho1, state.reduced(2))
        coh = oracle.FockState(20, 4, rho)
        for k in (1, 2, 3):
            assert oracle.factorial_moment(coh, k) == pytest.approx(
                alpha ** (2 * k), rel=1e-9)

    def test_observables_bundle(self):
        state = oracle.build_initial(ca.CatSpec.even(0.8), ca.CatSpec.odd(0.6), 16, 16)
        obs = oracle.observables(state)
        assert obs["mean_n1"] == pytest.approx(0.64 * math.tanh(0.64), rel=1e-10)
        assert obs["pnd_sum"].sum() == pytest.approx(1.0, abs=1e-12)
        assert set(obs["squeeze"]) == {"S1", "Q1", "S2", "Q2", "S", "Q"}
