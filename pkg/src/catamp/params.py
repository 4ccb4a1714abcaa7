"""Domain types for two-mode cat-state input to a dissipative parametric amplifier.

All times are scaled: the product g*t is the dimensionless evolution (squeeze)
parameter, and decay rates gamma are quoted in the same inverse time unit as
the gain g.  Every type here is an immutable value object and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

TWO_PI = 2.0 * math.pi


class DegenerateCat(ValueError):
    """Odd cat at zero amplitude: the superposition is the zero vector."""


def _canonical_phase(phi: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    out = math.fmod(float(phi), TWO_PI)
    if out < 0.0:
        out += TWO_PI
    return out


@dataclass(frozen=True)
class CatSpec:
    """One mode's initial cat state  N*(|alpha> + e^{i*rel_phase}|-alpha>).

    amp_mag   -- |alpha| >= 0 (dimensionless field amplitude)
    amp_phase -- phase of alpha, radians (stored reduced to [0, 2*pi))
    rel_phase -- relative phase between the two coherent components;
                 0 gives the even cat, pi the odd cat, pi/2 the Yurke-Stoler cat
    """

    amp_mag: float
    amp_phase: float = 0.0
    rel_phase: float = 0.0

    def __post_init__(self):
        if not self.amp_mag >= 0.0:
            raise ValueError(f"amp_mag must be >= 0, got {self.amp_mag}")
        object.__setattr__(self, "amp_mag", float(self.amp_mag))
        object.__setattr__(self, "amp_phase", _canonical_phase(self.amp_phase))
        object.__setattr__(self, "rel_phase", _canonical_phase(self.rel_phase))
        if self.amp_mag == 0.0 and self.rel_phase == math.pi:
            raise DegenerateCat(
                "odd cat with zero amplitude is the zero vector (no normalization)"
            )

    @classmethod
    def even(cls, amp_mag: float, amp_phase: float = 0.0) -> "CatSpec":
        return cls(amp_mag, amp_phase, 0.0)

    @classmethod
    def odd(cls, amp_mag: float, amp_phase: float = 0.0) -> "CatSpec":
        return cls(amp_mag, amp_phase, math.pi)

    @classmethod
    def yurke_stoler(cls, amp_mag: float, amp_phase: float = 0.0) -> "CatSpec":
        return cls(amp_mag, amp_phase, math.pi / 2.0)

    @property
    def amplitude(self) -> complex:
        """Complex amplitude alpha = amp_mag * e^{i*amp_phase}."""
        return self.amp_mag * complex(math.cos(self.amp_phase), math.sin(self.amp_phase))


def normalization(cat: CatSpec) -> float:
    """Squared normalization constant N^2 of the two-component superposition.

    N^2 = 1 / (2*(1 + exp(-2*|alpha|^2) * cos(rel_phase))), finite and positive
    for every constructible CatSpec (the degenerate odd-cat point is rejected
    at construction).
    """
    den = 2.0 * (1.0 + math.exp(-2.0 * cat.amp_mag**2) * math.cos(cat.rel_phase))
    if den <= 0.0:
        raise DegenerateCat("normalization denominator vanished")
    return 1.0 / den


class Regime(Enum):
    UNDERDAMPED = "underdamped"
    OVERDAMPED = "overdamped"
    CRITICAL = "critical"


@dataclass(frozen=True)
class AmplifierParams:
    """Gain, pump phase, cavity decay rates and reservoir occupations.

    g          -- gain coefficient (>= 0, inverse time)
    pump_phase -- initial pump phase, radians (stored reduced to [0, 2*pi))
    gamma1/2   -- cavity decay rates of signal/idler (>= 0, inverse time)
    nbar1/2    -- mean reservoir occupations seen by signal/idler (>= 0)
    """

    g: float
    pump_phase: float = 0.0
    gamma1: float = 0.0
    gamma2: float = 0.0
    nbar1: float = 0.0
    nbar2: float = 0.0

    def __post_init__(self):
        for name in ("g", "gamma1", "gamma2", "nbar1", "nbar2"):
            val = getattr(self, name)
            if not val >= 0.0:
                raise ValueError(f"{name} must be >= 0, got {val}")
            object.__setattr__(self, name, float(val))
        object.__setattr__(self, "pump_phase", _canonical_phase(self.pump_phase))

    @property
    def eps(self) -> float:
        """Discriminant (gamma1-gamma2)^2 + 16 g^2 of the drift eigenproblem."""
        return (self.gamma1 - self.gamma2) ** 2 + 16.0 * self.g**2

    def regime(self) -> Regime:
        """Damping regime: amplification vs dissipation.

        For symmetric losses gamma1 = gamma2 = gamma this is the textbook
        comparison of 2g against gamma; the general criterion 4g^2 vs
        gamma1*gamma2 reduces to it and matches the sign of the growing
        exponent of the drift coefficients.
        """
        lhs = 4.0 * self.g**2
        rhs = self.gamma1 * self.gamma2
        if lhs > rhs:
            return Regime.UNDERDAMPED
        if lhs < rhs:
            return Regime.OVERDAMPED
        return Regime.CRITICAL


@dataclass(frozen=True)
class MismatchPhase:
    """Phase mismatch psi = pump_phase - amp_phase1 - amp_phase2 (radians)."""

    psi: float


def mismatch_phase(params: AmplifierParams, cat1: CatSpec, cat2: CatSpec) -> MismatchPhase:
    """Derive the phase mismatch from pump and input amplitude phases."""
    return MismatchPhase(
        _canonical_phase(params.pump_phase - cat1.amp_phase - cat2.amp_phase)
    )


@dataclass(frozen=True)
class System:
    """A full input configuration: the two cats and the amplifier parameters."""

    cat1: CatSpec
    cat2: CatSpec
    params: AmplifierParams
