import math
import warnings

import numpy as np
import pytest
from scipy.special import eval_laguerre

import catamp as ca
from catamp import oracle
from catamp.coeffs import coeffs_at, evolved_amplitudes
from catamp.photon_stats import TruncationWarning, _ladder

from conftest import make_system, random_cat


class TestLaguerre:
    def test_low_orders(self):
        assert ca.laguerre(0, 3.7) == 1.0
        assert ca.laguerre(1, 3.7) == pytest.approx(1.0 - 3.7)
        # standard convention: L_2(0) = 1 (a convention with an extra n!
        # would give 2 here; the factorials live in the series prefactors)
        assert ca.laguerre(2, 0.0) == pytest.approx(1.0)
        assert ca.laguerre(2, 1.5) == pytest.approx(1.0 - 2 * 1.5 + 1.5**2 / 2)

    @pytest.mark.parametrize("n", [3, 17, 64, 200, 512])
    def test_against_scipy(self, n, rng):
        xs = rng.uniform(-20.0, 40.0, size=8)
        got = ca.laguerre(n, xs)
        ref = eval_laguerre(n, xs)
        assert np.allclose(got, ref, rtol=1e-8, atol=1e-8)

    def test_complex_argument(self):
        z = 0.7 - 1.3j
        # recurrence agrees with the explicit quadratic
        assert ca.laguerre(2, z) == pytest.approx(1.0 - 2 * z + z * z / 2)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            ca.laguerre(-1, 0.5)


class TestGeneratingQuantities:
    def test_root_identities(self, rng):
        for _ in range(30):
            system = ca.System(random_cat(rng), random_cat(rng),
                               ca.AmplifierParams(g=float(rng.uniform(0.2, 1.5)),
                                                  pump_phase=float(rng.uniform(0, 6)),
                                                  gamma1=float(rng.uniform(0, 2)),
                                                  gamma2=float(rng.uniform(0, 2)),
                                                  nbar1=float(rng.uniform(0, 1)),
                                                  nbar2=float(rng.uniform(0, 1))))
            t = float(rng.uniform(0, 1.2))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                coeffs = coeffs_at(system.params, t)
            terms, _ = ca.enumerate_terms(system.cat1, system.cat2)
            gq = ca.generating_quantities(terms[3], coeffs)
            scale = 1.0 + coeffs.B1N + coeffs.B2N
            assert gq.lambda_plus + gq.lambda_minus == pytest.approx(
                coeffs.B1N + coeffs.B2N, abs=1e-12 * scale)
            assert gq.lambda_plus * gq.lambda_minus == pytest.approx(
                coeffs.B1N * coeffs.B2N - abs(coeffs.D) ** 2, abs=1e-9 * scale**2)

    def test_vacuum_undamped_split(self):
        # thermal weights split as sinh^2 +- sinh*cosh; the lower one is negative
        params = ca.AmplifierParams(g=1.0, pump_phase=0.4)
        system = make_system("even", 0.0, "even", 0.0, pump=0.4)
        t = 0.6
        coeffs = coeffs_at(params, t)
        terms, _ = ca.enumerate_terms(system.cat1, system.cat2)
        gq = ca.generating_quantities(terms[0], coeffs)
        s, c = math.sinh(t), math.cosh(t)
        assert gq.lambda_plus == pytest.approx(s * s + s * c, rel=1e-12)
        assert gq.lambda_minus == pytest.approx(s * s - s * c, rel=1e-12)
        assert gq.lambda_minus < 0.0

    def test_t0_reduces_to_initial_amplitudes(self):
        system = make_system("even", 1.1, "yss", 0.8, psi1=0.5)
        coeffs = coeffs_at(system.params, 0.0)
        terms, _ = ca.enumerate_terms(system.cat1, system.cat2)
        for term in terms[:4]:
            gq = ca.generating_quantities(term, coeffs)
            ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
            assert gq.lambda_plus == pytest.approx(0.0, abs=1e-12)
            assert gq.lambda_minus == pytest.approx(0.0, abs=1e-12)
            assert gq.A_plus + gq.A_minus == pytest.approx(
                -(ab1 * abp1 + ab2 * abp2), abs=1e-12)

    def test_matches_direct_gaussian_integral(self, rng):
        # the generating function evaluated through lambda/A equals the
        # closed 4-dimensional Gaussian integral of the characteristic function
        system = ca.System(random_cat(rng, 1.4), random_cat(rng, 1.4),
                           ca.AmplifierParams(g=0.9, pump_phase=1.9,
                                              gamma1=0.7, gamma2=0.3,
                                              nbar1=0.4, nbar2=0.6))
        t = 0.52
        coeffs = coeffs_at(system.params, t)
        terms, _ = ca.enumerate_terms(system.cat1, system.cat2)
        for term in terms[:6]:
            gq = ca.generating_quantities(term, coeffs)
            ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
            for lam in (0.35, 1.0):
                via_split = (
                    term.prefactor()
                    / ((1 + lam * gq.lambda_plus) * (1 + lam * gq.lambda_minus))
                    * np.exp(gq.A_plus * lam / (1 + lam * gq.lambda_plus)
                             + gq.A_minus * lam / (1 + lam * gq.lambda_minus))
                )
                # real 4x4 Gaussian: zeta_j = x_j + i y_j
                m = np.zeros((4, 4))
                m[0, 0] = m[1, 1] = 1.0 / lam + coeffs.B1N
                m[2, 2] = m[3, 3] = 1.0 / lam + coeffs.B2N
                d = coeffs.D
                # 2 Re(D zeta1 zeta2) as a quadratic form in (x1,y1,x2,y2)
                quad = np.array([
                    [0, 0, d.real, -d.imag],
                    [0, 0, -d.imag, -d.real],
                    [d.real, -d.imag, 0, 0],
                    [-d.imag, -d.real, 0, 0],
                ])
                m -= quad
                b = np.array([ab1 - abp1, 1j * (ab1 + abp1),
                              ab2 - abp2, 1j * (ab2 + abp2)])
                sol = np.linalg.solve(m, b)
                direct = (
                    term.prefactor()
                    / (lam**2 * math.sqrt(np.linalg.det(m)))
                    * np.exp(0.25 * np.dot(b, sol))
                )
                assert via_split == pytest.approx(direct, rel=1e-9)


class TestLadder:
    def test_matches_plain_evaluation(self):
        x, y = 0.6, -2.3
        vals = _ladder(complex(x), complex(x * y), 0j, 8)
        for m in range(9):
            assert vals[m] == pytest.approx(x**m * eval_laguerre(m, y), rel=1e-12)

    def test_zero_thermal_weight_gives_poisson_factors(self):
        c1 = 1.7
        vals = _ladder(0j, complex(-c1), complex(-c1), 12)
        for m in range(13):
            expect = math.exp(-c1) * c1**m / math.factorial(m)
            assert vals[m].real == pytest.approx(expect, rel=1e-12)

    def test_extreme_scale_survives(self):
        # e^c underflows float range alone; combined values stay finite
        vals = _ladder(complex(-0.497), complex(5000.0 * -0.497 * 0.503 / 1.0),
                       complex(-900.0), 400)
        assert np.all(np.isfinite(vals))


class TestSumPnd:
    def test_normalization_random(self, rng):
        for _ in range(6):
            system = ca.System(random_cat(rng, 1.6), random_cat(rng, 1.6),
                               ca.AmplifierParams(g=1.0, pump_phase=1.0,
                                                  gamma1=0.4, gamma2=0.9,
                                                  nbar1=0.3, nbar2=0.2))
            dist = ca.sum_pnd(system, float(rng.uniform(0.0, 0.8)))
            assert dist.total == pytest.approx(1.0, abs=1e-8)
            assert np.min(dist.probs) > -1e-10

    def test_small_case_matches_oracle(self):
        system = make_system("even", 0.8, "even", 0.8, pump=np.pi / 2)
        t = 0.3
        state = oracle.build_initial(system.cat1, system.cat2, 30, 30)
        evolved = oracle.evolve(state, system.params, t)
        ref = oracle.pnd_sum(evolved)
        dist = ca.sum_pnd(system, t, n_max=len(ref) - 1)
        assert np.max(np.abs(dist.probs - ref)) < 1e-8

    def test_fig6_parity(self):
        # amplified even (x) even input keeps the photon-number sum even
        system = ca.System(ca.CatSpec.even(3.0), ca.CatSpec.even(2.0),
                           ca.AmplifierParams(g=1e4, pump_phase=np.pi / 2))
        dist = ca.sum_pnd(system, 3e-4)
        assert dist.total == pytest.approx(1.0, abs=1e-8)
        assert abs(np.sum(dist.probs[1::2])) < 1e-10

    def test_class_parts_sum_and_signs(self):
        system = ca.System(ca.CatSpec.even(3.0), ca.CatSpec.even(2.0),
                           ca.AmplifierParams(g=1e4, pump_phase=np.pi / 2))
        dist = ca.sum_pnd(system, 3e-4)
        total = sum(dist.class_parts.values())
        assert np.max(np.abs(total - dist.probs)) < 1e-15
        si = dist.class_parts[ca.TermClass.SYM_INTERFERENCE]
        # the symmetric-interference part oscillates through both signs
        assert si.min() < -1e-5 and si.max() > 1e-5

    def test_phase_structure_kills_interference_classes(self):
        # even (x) yurke-stoler: the symmetric class and the idler-side
        # asymmetric terms cancel exactly by phase; the signal-side
        # asymmetric terms survive only at a dynamically suppressed level
        system = ca.System(ca.CatSpec.even(3.0), ca.CatSpec.yurke_stoler(2.0),
                           ca.AmplifierParams(g=1e4, pump_phase=np.pi / 2))
        dist = ca.sum_pnd(system, 3e-4)
        si = dist.class_parts[ca.TermClass.SYM_INTERFERENCE]
        ai = dist.class_parts[ca.TermClass.ASYM_INTERFERENCE]
        assert np.max(np.abs(si)) < 1e-15
        assert np.max(np.abs(ai)) < 1e-3 * dist.probs.max()

    def test_truncation_warning(self):
        system = make_system("even", 1.5, "even", 1.0)
        with pytest.warns(TruncationWarning):
            ca.sum_pnd(system, 0.8, n_max=6)

    def test_convention_audit_regression(self):
        # reading the series with standard Laguerre polynomials while keeping
        # the printed per-order factorials breaks normalization and the oracle
        # match; this pins the resolved convention
        system = make_system("even", 0.8, "even", 0.8, pump=np.pi / 2)
        t = 0.3
        coeffs = coeffs_at(system.params, t)
        terms, norm = ca.enumerate_terms(system.cat1, system.cat2)
        n_max = 30
        wrong = np.zeros(n_max + 1)
        for term in terms:
            gq = ca.generating_quantities(term, coeffs)
            lp, lm = gq.lambda_plus, gq.lambda_minus
            dp, dm = 1.0 + lp, 1.0 + lm
            pref = term.prefactor() / (dp * dm) * np.exp(
                gq.A_plus / dp + gq.A_minus / dm)
            for n in range(n_max + 1):
                acc = 0j
                for el in range(n + 1):
                    acc += (
                        (lm / dm) ** (n - el) * (lp / dp) ** el
                        * ca.laguerre(n - el, gq.A_minus / (lm * dm))
                        * ca.laguerre(el, gq.A_plus / (lp * dp))
                        / (math.factorial(n - el) * math.factorial(el))
                    )
                wrong[n] += (norm * pref * acc).real
        correct = ca.sum_pnd(system, t, n_max=n_max).probs
        assert abs(np.sum(wrong) - 1.0) > 1e-3
        assert np.max(np.abs(wrong - correct)) > 1e-3


class TestSinglePnd:
    def test_even_cat_parity_at_t0(self):
        system = make_system("even", 1.4, "even", 0.9)
        dist = ca.single_pnd(1, system, 0.0)
        assert abs(np.sum(dist.probs[1::2])) < 1e-12
        assert dist.total == pytest.approx(1.0, abs=1e-10)

    def test_yurke_stoler_is_poissonian_at_t0(self):
        mag = 1.3
        system = make_system("yss", mag, "even", 0.7)
        dist = ca.single_pnd(1, system, 0.0, n_max=40)
        n = np.arange(41)
        pois = np.exp(-mag**2) * mag ** (2 * n) / np.array(
            [math.factorial(int(k)) for k in n])
        assert np.max(np.abs(dist.probs - pois)) < 1e-12

    def test_small_case_matches_oracle(self):
        system = ca.System(ca.CatSpec.odd(0.8, 0.4), ca.CatSpec.even(1.0),
                           ca.AmplifierParams(g=1.0, pump_phase=1.2))
        t = 0.3
        state = oracle.build_initial(system.cat1, system.cat2, 28, 28)
        evolved = oracle.evolve(state, system.params, t)
        for mode in (1, 2):
            ref = oracle.pnd_single(evolved, mode)
            dist = ca.single_pnd(mode, system, t, n_max=len(ref) - 1)
            assert np.max(np.abs(dist.probs - ref)) < 1e-8

    def test_fig3_parity_flip(self):
        # oscillation parity of the signal distribution flips with the
        # sign of the phase mismatch
        argmaxes = {}
        for label, pump in (("plus", np.pi / 2), ("minus", -np.pi / 2)):
            system = ca.System(ca.CatSpec.yurke_stoler(3.0),
                               ca.CatSpec.yurke_stoler(2.0),
                               ca.AmplifierParams(g=1.0, pump_phase=pump))
            dist = ca.single_pnd(1, system, 0.55)
            argmaxes[label] = int(np.argmax(dist.probs))
        assert argmaxes["plus"] % 2 != argmaxes["minus"] % 2

    def test_mean_consistent_with_moment(self, rng):
        system = ca.System(random_cat(rng, 1.4), random_cat(rng, 1.4),
                           ca.AmplifierParams(g=0.8, pump_phase=0.2,
                                              gamma1=0.5, gamma2=0.5,
                                              nbar1=0.4, nbar2=0.4))
        t = 0.6
        dist = ca.single_pnd(1, system, t)
        mean_moment = ca.moment(1, 1, 0, 0, system, t).real
        assert dist.mean() == pytest.approx(mean_moment, abs=1e-8)


class TestFactorialMoments:
    def test_zeroth_is_one(self):
        system = make_system("even", 1.0, "odd", 0.8)
        assert ca.factorial_moments(system, 0.3, 0) == (1.0, 0.0)

    def test_first_matches_moments(self, rng):
        system = ca.System(random_cat(rng, 1.5), random_cat(rng, 1.5),
                           ca.AmplifierParams(g=1.0, pump_phase=2.7,
                                              gamma1=0.3, gamma2=1.0,
                                              nbar1=0.1, nbar2=0.8))
        t = 0.45
        w1, _ = ca.factorial_moments(system, t, 1)
        expect = (ca.moment(1, 1, 0, 0, system, t)
                  + ca.moment(0, 0, 1, 1, system, t)).real
        assert w1 == pytest.approx(expect, abs=1e-10)

    def test_second_matches_fourth_order_moments(self, rng):
        system = ca.System(random_cat(rng, 1.2), random_cat(rng, 1.2),
                           ca.AmplifierParams(g=0.9, pump_phase=0.5))
        t = 0.38
        w2, _ = ca.factorial_moments(system, t, 2)
        expect = (ca.moment(2, 2, 0, 0, system, t)
                  + ca.moment(0, 0, 2, 2, system, t)
                  + 2.0 * ca.moment(1, 1, 1, 1, system, t)).real
        assert w2 == pytest.approx(expect, rel=1e-10)

    def test_coherent_term_is_poissonian_at_t0(self):
        # a diagonal coherent element (plain coherent input) has exactly
        # Poissonian factorial moments before any evolution
        term = ca.DensityTerm(a1_ket=1.3 + 0j, a1_bra=1.3 + 0j,
                              a2_ket=0.9 + 0j, a2_bra=0.9 + 0j,
                              weight=1.0 + 0j, kind=ca.TermClass.MIXTURE)
        coeffs = coeffs_at(ca.AmplifierParams(g=1.0), 0.0)
        gq = ca.generating_quantities(term, coeffs)
        mean = 1.3**2 + 0.9**2
        for k in (1, 2, 3, 5):
            lp = _ladder(complex(gq.lambda_plus), gq.A_plus, 0j, k)
            lm = _ladder(complex(gq.lambda_minus), gq.A_minus, 0j, k)
            wk = (math.factorial(k) * np.dot(lm[::-1], lp)).real
            assert wk == pytest.approx(mean**k, rel=1e-12)

    def test_large_cat_approaches_poissonian(self):
        # component overlap e^{-2|alpha|^2} sets the deviation scale
        system = make_system("even", 2.5, "even", 2.0)
        for k in (2, 3):
            _, kc = ca.factorial_moments(system, 0.0, k)
            assert abs(kc) < 5e-3

    def test_matches_oracle(self):
        system = ca.System(ca.CatSpec.even(1.0, 0.3),
                           ca.CatSpec.yurke_stoler(0.8, 0.9),
                           ca.AmplifierParams(g=1.0, pump_phase=0.7))
        t = 0.35
        state = oracle.build_initial(system.cat1, system.cat2, 25, 25)
        evolved = oracle.evolve(state, system.params, t)
        for k in (1, 2, 3, 5):
            wk, _ = ca.factorial_moments(system, t, k)
            ref = oracle.factorial_moment(evolved, k)
            assert wk == pytest.approx(ref, rel=1e-6)
        for k in (1, 2, 4):
            wk, _ = ca.factorial_moments(system, t, k, scope="single", mode=2)
            ref = oracle.factorial_moment(evolved, k, scope="single", mode=2)
            assert wk == pytest.approx(ref, rel=1e-6)

    def test_order_bound(self):
        system = make_system("even", 1.0, "even", 1.0)
        with pytest.raises(ValueError):
            ca.factorial_moments(system, 0.1, 65)
