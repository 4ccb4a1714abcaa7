"""Single-mode Wigner function on a phase-space grid.

Each density-operator term contributes a complex Gaussian centred between its
evolved bra/ket drift amplitudes, with a width growing with the accumulated
noise; the 16-term weighted sum is real.  Negativity of the summed function
signals surviving phase-space interference.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coeffs import EvolvedCoeffs, coeffs_at, evolved_amplitudes
from .params import System
from .rho_terms import DensityTerm, enumerate_terms

_IMAG_RESIDUE_TOL = 1e-10
_BOUNDARY_TOL = 1e-6


class SupportWarning(UserWarning):
    """The grid clips non-negligible Wigner mass at its boundary."""


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space grid for z = x + i*y."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int = 201
    ny: int = 201


@dataclass(frozen=True)
class PhaseGrid:
    """Evaluated Wigner values W[iy, ix] on the grid spec's lattice."""

    spec: GridSpec
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.spec.x_min, self.spec.x_max, self.spec.nx)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(self.spec.y_min, self.spec.y_max, self.spec.ny)

    def integral(self) -> float:
        """Riemann sum of W over the grid."""
        dx = (self.spec.x_max - self.spec.x_min) / (self.spec.nx - 1)
        dy = (self.spec.y_max - self.spec.y_min) / (self.spec.ny - 1)
        return float(np.sum(self.values)) * dx * dy


def wigner_term(term: DensityTerm, coeffs: EvolvedCoeffs, z, mode: int = 1):
    """One term's (complex) Wigner contribution at z (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
    if mode == 1:
        b, abar, abarp = coeffs.B1N, ab1, abp1
    elif mode == 2:
        b, abar, abarp = coeffs.B2N, ab2, abp2
    else:
        raise ValueError("mode must be 1 or 2")
    width = 1.0 + 2.0 * b
    val = (2.0 / (math.pi * width)) * term.prefactor() * np.exp(
        -2.0 * (abar - np.conj(z)) * (abarp - z) / width
    )
    return val if val.ndim else val[()]


def _wigner_sum(system: System, t: float, z, mode: int = 1) -> np.ndarray:
    terms, norm = enumerate_terms(system.cat1, system.cat2)
    coeffs = coeffs_at(system.params, t)
    acc = norm * sum(wigner_term(term, coeffs, z, mode) for term in terms)
    acc = np.asarray(acc)
    scale = float(np.max(np.abs(acc))) or 1.0
    residue = float(np.max(np.abs(acc.imag)))
    if residue > _IMAG_RESIDUE_TOL * scale:
        raise RuntimeError(
            f"Wigner sum not real: imaginary residue {residue:.3e} (scale {scale:.3e})"
        )
    return acc.real


def wigner_point(system: System, t: float, z: complex, mode: int = 1) -> float:
    """Wigner function of one mode at a single phase-space point."""
    return float(_wigner_sum(system, t, complex(z), mode))


def default_grid(system: System, t: float, mode: int = 1,
                 nx: int = 201, ny: int = 201) -> GridSpec:
    """Symmetric grid covering all drift centres plus 5 noise widths."""
    terms, _ = enumerate_terms(system.cat1, system.cat2)
    coeffs = coeffs_at(system.params, t)
    centers = []
    for term in terms:
        ab1, ab2, abp1, abp2 = evolved_amplitudes(term, coeffs)
        centers.append(abs(abp1 if mode == 1 else abp2))
    b = coeffs.B1N if mode == 1 else coeffs.B2N
    r = max(centers) + 5.0 * math.sqrt(1.0 + 2.0 * b)
    return GridSpec(-r, r, -r, r, nx, ny)


def wigner_grid(system: System, t: float, spec: GridSpec | None = None,
                mode: int = 1) -> PhaseGrid:
    """Wigner function of one mode over a rectangular grid."""
    if spec is None:
        spec = default_grid(system, t, mode)
    x = np.linspace(spec.x_min, spec.x_max, spec.nx)
    y = np.linspace(spec.y_min, spec.y_max, spec.ny)
    z = x[None, :] + 1j * y[:, None]
    vals = _wigner_sum(system, t, z, mode)
    peak = float(np.max(np.abs(vals))) or 1.0
    edge = max(
        float(np.max(np.abs(vals[0, :]))),
        float(np.max(np.abs(vals[-1, :]))),
        float(np.max(np.abs(vals[:, 0]))),
        float(np.max(np.abs(vals[:, -1]))),
    )
    if edge > _BOUNDARY_TOL * peak:
        warnings.warn(
            f"Wigner boundary magnitude {edge:.3e} exceeds {_BOUNDARY_TOL:.0e} of peak",
            SupportWarning,
            stacklevel=2,
        )
    return PhaseGrid(spec=spec, values=vals)


def wigner_cut(system: System, t: float, y: float = -0.25,
               x: np.ndarray | None = None, mode: int = 1,
               system_grid: GridSpec | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Wigner values along a constant-y line (exact evaluation, no snapping)."""
    if x is None:
        spec = system_grid or default_grid(system, t, mode)
        x = np.linspace(spec.x_min, spec.x_max, spec.nx)
    z = np.asarray(x) + 1j * y
    return np.asarray(x), _wigner_sum(system, t, z, mode)


def _strict_maxima(v: np.ndarray, cut: float) -> list[tuple[float, int, int]]:
    core = v[1:-1, 1:-1]
    mask = core > cut
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy == 0 and dx == 0:
                continue
            mask &= core > v[1 + dy : v.shape[0] - 1 + dy, 1 + dx : v.shape[1] - 1 + dx]
    iy, ix = np.nonzero(mask)
    return sorted(
        ((float(v[j + 1, i + 1]), j + 1, i + 1) for j, i in zip(iy, ix)), reverse=True
    )


def _saddle_to_higher(v: np.ndarray, peak: tuple[float, int, int]) -> float:
    """Highest level at which the peak's super-level component reaches a
    strictly higher point (binary search over connected components)."""
    from scipy import ndimage

    val, j, i = peak
    lo, hi = float(np.min(v)), val
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        labels, _ = ndimage.label(v >= mid)
        comp = labels == labels[j, i]
        if float(np.max(v[comp])) > val:
            lo = mid
        else:
            hi = mid
    return lo


def count_peaks(grid: PhaseGrid, rel_threshold: float = 0.05,
                rel_prominence: float = 0.05) -> int:
    """Number of well-separated maxima above rel_threshold * max.

    Strict interior local maxima are first collected, then merged by
    topographic prominence: a maximum only counts as a separate peak when it
    rises at least rel_prominence * max above the saddle connecting it to
    higher ground.  This keeps the count grid-resolution independent (a broad
    lobe does not split into several peaks over percent-deep ripples).
    """
    v = grid.values
    vmax = float(np.max(v))
    if vmax <= 0.0:
        return 0
    maxima = _strict_maxima(v, rel_threshold * vmax)
    if not maxima:
        return 0
    count = 0
    for k, peak in enumerate(maxima):
        if k == 0:
            count += 1
            continue
        prominence = peak[0] - _saddle_to_higher(v, peak)
        if prominence >= rel_prominence * vmax:
            count += 1
    return count
