"""
Shared parameter and result types for a single atom-cavity-waveguide site.

All rates and detunings are dimensionless and measured in units of the
waveguide-cavity coupling rate Gamma. The photon frequency enters only
through the detuning ``delta = omega - omega_eg`` from the atomic transition.
"""

# =============================================================================
# Imports
# =============================================================================
import dataclasses
from typing import ClassVar

import numpy as np

from .utilities import (
    DivisionByZeroRate,
    EmptyWindow,
    NegativeRate,
    NonFiniteDetuning,
    NonPositiveUnit,
)


@dataclasses.dataclass(frozen=True)
class CqedParams:
    """
    Physical rates of one Jaynes-Cummings site side-coupled to a waveguide.

    Parameters
    ----------
    g : float
        Atom-cavity coupling.
    kappa : float
        Cavity photon leakage rate.
    gamma : float
        Atomic spontaneous emission rate.
    eta : float
        Backscattering between the clockwise and counterclockwise ring modes.
    delta_ac : float
        Atom-cavity detuning ``omega_c - omega_eg``.
    big_gamma : float
        Waveguide-cavity rate. This is the unit of the problem and defaults to 1.
    """

    g: float = 0.0
    kappa: float = 0.0
    gamma: float = 0.0
    eta: float = 0.0
    delta_ac: float = 0.0
    big_gamma: float = 1.0

    rateFields: ClassVar[tuple] = ("g", "kappa", "gamma", "eta")

    def validate(self):
        """Check the rate invariants, see :func:`validate`."""
        return validate(self)

    def lossless(self):
        """True when neither the cavity nor the atom leaks photons."""
        return self.kappa == 0.0 and self.gamma == 0.0

    def regime(self):
        """
        Classify the coupling regime.

        Returns
        -------
        regime : str
            'decoupled' for g = 0, 'strong' when g exceeds both loss rates,
            'weak' when g is below both, otherwise 'intermediate'.
        """
        if self.g == 0.0:
            return "decoupled"
        if self.g > max(self.kappa, self.gamma):
            return "strong"
        if self.g < min(self.kappa, self.gamma):
            return "weak"
        return "intermediate"

    def replace(self, **changes):
        """Return a copy with the given fields changed."""
        return dataclasses.replace(self, **changes)

    def asDict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, eq=False)
class ScatteringAmplitudes:
    """
    Complex transmission and reflection amplitudes of a scatterer.

    ``t`` and ``r`` may be scalars or equally shaped arrays (one entry per detuning).
    """

    t: complex
    r: complex

    @property
    def T(self):
        """Transmission intensity |t|^2"""
        return np.abs(self.t) ** 2

    @property
    def R(self):
        """Reflection intensity |r|^2"""
        return np.abs(self.r) ** 2


@dataclasses.dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Tabulated transmission and reflection intensities over a detuning grid.

    Points where the computation hit a pole are kept in the table and marked
    in ``flag`` (1 for a flagged point, 0 otherwise).
    """

    delta: np.ndarray
    T: np.ndarray
    R: np.ndarray
    flag: np.ndarray

    columns: ClassVar[tuple] = ("delta", "T", "R", "flag")

    def __len__(self):
        return len(self.delta)

    @property
    def numFlagged(self):
        return int(np.count_nonzero(self.flag))

    def table(self):
        """Return the spectrum as an (n, 4) array in column order."""
        return np.column_stack([self.delta, self.T, self.R, self.flag])


def validate(params):
    """
    Check the invariants of a :class:`CqedParams` object.

    Parameters
    ----------
    params : CqedParams
        Parameters to check.

    Returns
    -------
    params : CqedParams
        The same object, unchanged.
    """
    for name in CqedParams.rateFields:
        value = getattr(params, name)
        if not np.isfinite(value):
            raise NegativeRate("validate", f"Rate '{name}' must be finite, got {value}.")
        if value < 0.0:
            raise NegativeRate(
                "validate", f"Rate '{name}' must be non-negative, got {value}."
            )
    if not np.isfinite(params.delta_ac):
        raise NonFiniteDetuning(
            "validate", f"Atom-cavity detuning must be finite, got {params.delta_ac}."
        )
    if not params.big_gamma > 0.0 or not np.isfinite(params.big_gamma):
        raise NonPositiveUnit(
            "validate",
            f"Waveguide-cavity rate 'big_gamma' must be positive, got {params.big_gamma}.",
        )
    return params


def checkDetuning(delta):
    """Return ``delta`` as a float array, raising NonFiniteDetuning on inf/nan entries."""
    delta = np.asarray(delta, dtype=float)
    if not np.all(np.isfinite(delta)):
        raise NonFiniteDetuning("checkDetuning", "Detunings must be finite.")
    return delta


def effectiveDetunings(params, delta):
    """
    Complex cavity and atom detunings including their loss rates.

    Parameters
    ----------
    params : CqedParams
        Site parameters.
    delta : float or numpy.ndarray
        Photon detuning from the atomic transition.

    Returns
    -------
    deltaC : complex or numpy.ndarray
        ``delta - delta_ac + i kappa``
    deltaEg : complex or numpy.ndarray
        ``delta + i gamma``
    """
    delta = checkDetuning(delta)
    deltaC = delta - params.delta_ac + 1j * params.kappa
    deltaEg = delta + 1j * params.gamma
    return deltaC, deltaEg


def cooperativity(params):
    """
    Cooperativity g^2 / (2 kappa gamma) of the atom-cavity pair.
    """
    if params.kappa == 0.0 or params.gamma == 0.0:
        raise DivisionByZeroRate(
            "cooperativity",
            "Cooperativity is undefined when kappa or gamma vanishes "
            f"(kappa={params.kappa}, gamma={params.gamma}).",
        )
    return params.g**2 / (2.0 * params.kappa * params.gamma)


def detuningGrid(grid):
    """
    Build a uniform detuning grid.

    Parameters
    ----------
    grid : tuple
        ``(lo, hi, nPoints)`` with ``lo < hi`` and ``nPoints >= 2``.

    Returns
    -------
    delta : numpy.ndarray
        ``numpy.linspace(lo, hi, nPoints)``
    """
    lo, hi, nPoints = grid
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise EmptyWindow("detuningGrid", f"Invalid detuning window [{lo}, {hi}].")
    if int(nPoints) < 2:
        raise EmptyWindow(
            "detuningGrid", f"A sweep needs at least 2 points, got {nPoints}."
        )
    return np.linspace(lo, hi, int(nPoints))
