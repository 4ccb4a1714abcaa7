"""Photon-number distributions and reduced factorial moments.

Every term of the state contributes a two-fold Laguerre series built from two
effective "thermal + coherent" channels with thermal weights lambda_+/- and
coherent weights A_+/-.  Laguerre polynomials are used in the standard
convention (L_0 = 1, L_1 = 1 - x, three-term recurrence); the factorials that
a convention carrying an extra n! would need are folded into the series
prefactors so that distributions are normalized and match the Fock-space
reference.  The ladder x^m * L_m(y) * e^c is evaluated by a renormalized
recurrence in the variables (x, x*y, c), which is regular at the t = 0 point
where the thermal weights vanish and safe against overflow at large gain.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coeffs import EvolvedCoeffs, coeffs_at, evolved_amplitudes
from .params import System
from .rho_terms import DensityTerm, TermClass, enumerate_terms


class TruncationWarning(UserWarning):
    """The requested n_max leaves more probability mass in the tail than the
    stated tolerance."""


TAIL_TOL = 1e-6
MAX_FACTORIAL_ORDER = 64
# below this (relative) separation, the two thermal channels are treated as
# the decoupled per-mode channels; exact when the cross-correlation vanishes
_DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class GenQuantities:
    """Thermal weights lambda_+/- and coherent weights A_+/- of one term."""

    lambda_plus: float
    lambda_minus: float
    A_plus: complex
    A_minus: complex


@dataclass(frozen=True)
class Distribution:
    """Photon-number probabilities P(0..n_max) with optional class parts."""

    probs: np.ndarray
    n_max: int
    class_parts: dict[TermClass, np.ndarray] | None = field(default=None)

    @property
    def total(self) -> float:
        return float(np.sum(self.probs))

    def mean(self) -> float:
        return float(np.dot(np.arange(self.n_max + 1), self.probs))


def laguerre(n: int, x):
    """Standard Laguerre polynomial L_n(x) (scalar or array, real or complex).

    Three-term recurrence; supports orders well past 512.
    """
    if n < 0 or n != int(n):
        raise ValueError("n must be a nonnegative integer")
    x = np.asarray(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else prev[()]
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur if cur.ndim else cur[()]


def generating_quantities(term: DensityTerm, coeffs: EvolvedCoeffs) -> GenQuantities:
    """Thermal and coherent channel weights for one term.

    When the two channel weights degenerate (which requires the anomalous
    correlation to vanish), the partial-fraction split is replaced by the
    per-mode decoupled assignment, which is exact there.
    """
    b1, b2, d = coeffs.B1N, coeffs.B2N, coeffs.D
    ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
    disc = math.sqrt((b1 - b2) ** 2 + 4.0 * abs(d) ** 2)
    scale = 1.0 + b1 + b2
    if disc < _DEGENERATE_TOL * scale:
        c1 = ab1 * abp1
        c2 = ab2 * abp2
        if b1 >= b2:
            return GenQuantities(b1, b2, -c1, -c2)
        return GenQuantities(b2, b1, -c2, -c1)
    lam_p = 0.5 * (b1 + b2) + 0.5 * disc
    lam_m = 0.5 * (b1 + b2) - 0.5 * disc

    def numer(lam):
        return (
            abp1 * abp2 * d
            + ab1 * ab2 * d.conjugate()
            - ab1 * abp1 * (b2 - lam)
            - ab2 * abp2 * (b1 - lam)
        )

    # the split carries 1/(lambda_minus - lambda_plus) = -1/disc
    a_p = -numer(lam_p) / disc
    a_m = numer(lam_m) / disc
    return GenQuantities(lam_p, lam_m, a_p, a_m)


def _ladder(x: complex, xy: complex, c: complex, n: int) -> np.ndarray:
    """Values e^c * x^m * L_m(xy / x) for m = 0..n, by renormalized recurrence.

    Written in terms of (x, xy) the recurrence is polynomial, hence regular at
    x = 0.  A floating shift keeps the running pair inside float range; the
    shift is folded back per order, so genuinely tiny values underflow to 0
    and genuinely huge intermediate magnitudes survive.
    """
    vals = np.empty(n + 1, dtype=complex)
    shifts = np.empty(n + 1, dtype=float)
    shift = c.real
    prev = complex(math.cos(c.imag), math.sin(c.imag))  # e^{i Im c}
    vals[0] = prev
    shifts[0] = shift
    if n == 0:
        return vals * np.exp(shifts)
    cur = x * prev - xy * prev
    vals[1] = cur
    shifts[1] = shift
    for m in range(1, n):
        nxt = ((x * (2 * m + 1) - xy) * cur - m * x * x * prev) / (m + 1)
        mag = max(abs(nxt), abs(cur))
        if mag > 1e100:
            nxt *= 1e-200
            cur *= 1e-200
            shift += 200.0 * math.log(10.0)
        elif 0.0 < mag < 1e-100:
            nxt *= 1e200
            cur *= 1e200
            shift -= 200.0 * math.log(10.0)
        prev, cur = cur, nxt
        vals[m + 1] = cur
        shifts[m + 1] = shift
    with np.errstate(over="ignore", under="ignore"):
        return vals * np.exp(shifts)


def _term_sum_pnd(term: DensityTerm, coeffs: EvolvedCoeffs, n_max: int) -> np.ndarray:
    gq = generating_quantities(term, coeffs)
    lam_p, lam_m = gq.lambda_plus, gq.lambda_minus
    den_p, den_m = 1.0 + lam_p, 1.0 + lam_m
    u = _ladder(lam_p / den_p, gq.A_plus / den_p**2, gq.A_plus / den_p, n_max)
    v = _ladder(lam_m / den_m, gq.A_minus / den_m**2, gq.A_minus / den_m, n_max)
    conv = np.convolve(u, v)[: n_max + 1]
    return (term.prefactor() / (den_p * den_m)) * conv


def _auto_n_max(system: System, t: float, single_mode: int | None) -> int:
    """Truncation from the mean and variance of the photon-number observable."""
    if single_mode is None:
        scope, mode = "compound", 1
    else:
        scope, mode = "single", single_mode
    w1, _ = factorial_moments(system, t, 1, scope=scope, mode=mode)
    w2, _ = factorial_moments(system, t, 2, scope=scope, mode=mode)
    mean = max(w1, 0.0)
    var = max(w2 + mean - mean**2, mean)
    return max(int(math.ceil(mean + 8.0 * math.sqrt(var + 1.0))), 31) + 1


# auto-truncation targets a tail well below the normalization tolerance
_AUTO_TAIL_TARGET = 1e-9
_AUTO_GROWTH_TRIES = 4


def _with_auto_tail(n_max, auto, compute):
    """Run compute(n_max); with automatic truncation, grow until the tail
    drops below the target (thermal tails can outlive the variance margin)."""
    if n_max is not None:
        probs, extra = compute(n_max)
        _check_tail(probs)
        return probs, extra, n_max
    n_max = auto()
    for _ in range(_AUTO_GROWTH_TRIES):
        probs, extra = compute(n_max)
        if 1.0 - float(np.sum(probs)) <= _AUTO_TAIL_TARGET:
            return probs, extra, n_max
        n_max = int(1.7 * n_max) + 50
    _check_tail(probs)
    return probs, extra, n_max


def sum_pnd(system: System, t: float, n_max: int | None = None) -> Distribution:
    """Distribution of the total photon number n1 + n2.

    Also exposes the three class parts (mixture, symmetric interference,
    asymmetric interference); the parts may be negative individually, the
    total is a probability distribution.
    """
    terms, norm = enumerate_terms(system.cat1, system.cat2)
    coeffs = coeffs_at(system.params, t)

    def compute(nm):
        parts = {kind: np.zeros(nm + 1, dtype=complex) for kind in TermClass}
        for term in terms:
            parts[term.kind] += _term_sum_pnd(term, coeffs, nm)
        real_parts = {kind: norm * arr.real for kind, arr in parts.items()}
        return sum(real_parts.values()), real_parts

    probs, real_parts, n_max = _with_auto_tail(
        n_max, lambda: _auto_n_max(system, t, None), compute)
    return Distribution(probs=probs, n_max=n_max, class_parts=real_parts)


def single_pnd(mode: int, system: System, t: float, n_max: int | None = None) -> Distribution:
    """Marginal photon-number distribution of one mode (1 = signal, 2 = idler)."""
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    terms, norm = enumerate_terms(system.cat1, system.cat2)
    coeffs = coeffs_at(system.params, t)
    b = coeffs.B1N if mode == 1 else coeffs.B2N
    den = 1.0 + b

    def compute(nm):
        acc = np.zeros(nm + 1, dtype=complex)
        for term in terms:
            ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
            c1 = ab1 * abp1 if mode == 1 else ab2 * abp2
            ladder = _ladder(b / den, -c1 / den**2, -c1 / den, nm)
            acc += (term.prefactor() / den) * ladder
        return norm * acc.real, None

    probs, _, n_max = _with_auto_tail(
        n_max, lambda: _auto_n_max(system, t, mode), compute)
    return Distribution(probs=probs, n_max=n_max)


def _check_tail(probs: np.ndarray) -> None:
    tail = 1.0 - float(np.sum(probs))
    if tail > TAIL_TOL:
        warnings.warn(
            f"photon-number tail mass {tail:.3e} exceeds {TAIL_TOL:.0e}; "
            "increase n_max",
            TruncationWarning,
            stacklevel=3,
        )


def factorial_moments(
    system: System, t: float, k: int, scope: str = "compound", mode: int = 1
) -> tuple[float, float]:
    """Reduced factorial moment <W^k> and its normalized form <W^k>/<W>^k - 1.

    scope "compound" uses the photon-number sum of both modes, "single" the
    chosen mode alone.  Negative normalized values indicate sub-Poissonian
    (antibunched) light.  The normalized form is NaN when <W> = 0.
    """
    if k < 0 or k != int(k):
        raise ValueError("k must be a nonnegative integer")
    if k > MAX_FACTORIAL_ORDER:
        raise ValueError(f"k must be <= {MAX_FACTORIAL_ORDER}")
    if scope not in ("compound", "single"):
        raise ValueError("scope must be 'compound' or 'single'")
    if k == 0:
        return 1.0, 0.0
    terms, norm = enumerate_terms(system.cat1, system.cat2)
    coeffs = coeffs_at(system.params, t)
    kfac = math.factorial(k)
    total = 0j
    for term in terms:
        if scope == "compound":
            gq = generating_quantities(term, coeffs)
            lp = _ladder(complex(gq.lambda_plus), gq.A_plus, 0j, k)
            lm = _ladder(complex(gq.lambda_minus), gq.A_minus, 0j, k)
            val = kfac * np.dot(lm[::-1], lp)
        else:
            ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
            b = coeffs.B1N if mode == 1 else coeffs.B2N
            c1 = ab1 * abp1 if mode == 1 else ab2 * abp2
            val = kfac * _ladder(complex(b), -c1, 0j, k)[k]
        total += term.prefactor() * val
    wk = float((norm * total).real)
    if k == 1:
        return wk, 0.0
    w1 = factorial_moments(system, t, 1, scope=scope, mode=mode)[0]
    if w1 == 0.0:
        return wk, float("nan")
    return wk, wk / w1**k - 1.0
