"""Expansion of the initial two-mode cat x cat density operator.

The product of two two-component superpositions expands into 16 elementary
operators |k1>|k2><b2|<b1| with ket/bra amplitudes +-alpha_j and a pure phase
weight.  Terms split into three classes: diagonal (statistical mixture), both
modes off-diagonal (symmetric interference), one mode off-diagonal (asymmetric
interference).  The global factor N1^2*N2^2 is returned separately.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

from .params import CatSpec, normalization


class TermClass(Enum):
    MIXTURE = "M"
    SYM_INTERFERENCE = "SI"
    ASYM_INTERFERENCE = "AI"


@dataclass(frozen=True)
class DensityTerm:
    """One of the 16 elements |a1_ket>|a2_ket><a2_bra|<a1_bra| * weight."""

    a1_ket: complex
    a1_bra: complex
    a2_ket: complex
    a2_bra: complex
    weight: complex
    kind: TermClass

    def prefactor(self) -> complex:
        """weight times the coherent overlaps <bra|ket> of both modes.

        The prefactor is the term's trace; the 16 prefactors weighted by
        N1^2*N2^2 sum to exactly 1.
        """
        return (
            self.weight
            * coherent_overlap(self.a1_bra, self.a1_ket)
            * coherent_overlap(self.a2_bra, self.a2_ket)
        )


def coherent_overlap(bra: complex, ket: complex) -> complex:
    """<bra|ket> for two coherent states."""
    return cmath.exp(
        bra.conjugate() * ket - 0.5 * abs(bra) ** 2 - 0.5 * abs(ket) ** 2
    )


_SIGNS = (1, -1)  # canonical ordering: + before -


def enumerate_terms(cat1: CatSpec, cat2: CatSpec) -> tuple[list[DensityTerm], float]:
    """All 16 density-operator terms plus the global factor N1^2*N2^2.

    Ordering is canonical (mode-1 ket sign, mode-1 bra sign, mode-2 ket sign,
    mode-2 bra sign; + before -) so per-term and per-class outputs downstream
    are deterministic.  Weights are built as exp of exact +-rel_phase sums.
    """
    a1 = cat1.amplitude
    a2 = cat2.amplitude
    terms: list[DensityTerm] = []
    for s1k in _SIGNS:
        for s1b in _SIGNS:
            for s2k in _SIGNS:
                for s2b in _SIGNS:
                    phase = 0.0
                    if s1k < 0:
                        phase += cat1.rel_phase
                    if s1b < 0:
                        phase -= cat1.rel_phase
                    if s2k < 0:
                        phase += cat2.rel_phase
                    if s2b < 0:
                        phase -= cat2.rel_phase
                    off1 = s1k != s1b
                    off2 = s2k != s2b
                    if off1 and off2:
                        kind = TermClass.SYM_INTERFERENCE
                    elif off1 or off2:
                        kind = TermClass.ASYM_INTERFERENCE
                    else:
                        kind = TermClass.MIXTURE
                    terms.append(
                        DensityTerm(
                            a1_ket=s1k * a1,
                            a1_bra=s1b * a1,
                            a2_ket=s2k * a2,
                            a2_bra=s2b * a2,
                            weight=cmath.exp(1j * phase),
                            kind=kind,
                        )
                    )
    return terms, normalization(cat1) * normalization(cat2)
