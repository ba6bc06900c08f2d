"""
Band structure of the infinite periodic array.

The Bloch condition ``cos(K L) = Re[exp(-i q L) / t]`` is evaluated two ways:
directly from the site transmission, and through the real coefficients
``(A, B, C, D)`` of the dispersion relation. The coefficient form is the
production path used for band scans; the transmission form cross-checks it.

Photon frequencies are given as ``omega / omega_eg``. They map to the detuning
``delta = (omega/omega_eg - 1) / rho`` used by the site physics and to the
detuned phase ``q L = 2 pi (L/lambda0) (omega/omega_eg - 1)``.
"""

# =============================================================================
# Imports
# =============================================================================
import dataclasses

import numpy as np
import scipy.optimize

from .scattering import maskedGeneralAmplitudes
from .utilities import (
    DegenerateABCD,
    DegenerateDenominator,
    EmptyWindow,
    InvalidLattice,
    LossyParams,
    PreconditionViolation,
    ZeroTransmission,
)

# A^2 + B^2 below this leaves the dispersion relation undefined
ABCD_TOL = 1e-20
# Gap edges are bisected to this accuracy in detuning
EDGE_TOL = 1e-12
# Interior samples per scan step when a gap is re-checked for narrow bands
REFINE = 64


@dataclasses.dataclass(frozen=True)
class BlochSample:
    """
    The Bloch condition at one photon frequency.

    ``k_l`` is the Bloch phase ``arccos(rhs)`` in [0, pi] for propagating
    frequencies and NaN inside a gap.
    """

    omega_over_omega_eg: float
    q_l: float
    rhs: float
    propagating: bool
    abcd: tuple
    k_l: float = float("nan")


@dataclasses.dataclass(frozen=True)
class BandGap:
    """A forbidden frequency interval, in units of omega_eg."""

    omega_lo: float
    omega_hi: float

    @property
    def width(self):
        return self.omega_hi - self.omega_lo


def abcdCoefficients(params, delta):
    """
    Real coefficients (A, B, C, D) of the dispersion relation.

    The coefficient expressions measure detuning from the cavity resonance;
    they are evaluated at ``delta - delta_ac`` so that ``delta`` keeps its
    atom-referenced meaning.

    Parameters
    ----------
    params : CqedParams
        Site parameters.
    delta : float or numpy.ndarray
        Photon detuning(s) from the atomic transition.

    Returns
    -------
    A, B, C, D : float or numpy.ndarray
    """
    g2 = params.g**2
    kappa, gamma, eta = params.kappa, params.gamma, params.eta
    bigGamma = params.big_gamma
    atom = np.asarray(delta, dtype=float)
    cav = atom - params.delta_ac

    A = (
        -2.0 * g2 * (cav + eta)
        - 2.0 * gamma * cav * kappa
        - kappa**2 * atom
        + atom * (bigGamma**2 + cav**2 - eta**2)
    )
    B = (
        -2.0 * g2 * kappa
        + 2.0 * kappa * cav * atom
        + gamma * (bigGamma**2 + cav**2 - eta**2 - kappa**2)
    )
    C = (
        -(bigGamma**2) * atom
        - 2.0 * gamma * cav * kappa
        - 2.0 * bigGamma * (gamma * cav + kappa * atom)
        - kappa**2 * atom
        + (cav + eta) * (-2.0 * g2 + atom * (cav - eta))
    )
    D = (
        -2.0 * g2 * (bigGamma + kappa)
        + 2.0 * cav * atom * (bigGamma + kappa)
        - gamma * (-(cav**2) + eta**2 + (bigGamma + kappa) ** 2)
    )
    if np.ndim(A) == 0:
        return float(A), float(B), float(C), float(D)
    return A, B, C, D


def _frequencyMap(spec, omegaRatio):
    if not spec.rho > 0.0:
        raise InvalidLattice(
            "bloch", f"Band structure needs a positive rho = Gamma/omega_eg, got {spec.rho}."
        )
    offset = np.asarray(omegaRatio, dtype=float) - 1.0
    delta = offset / spec.rho
    qL = 2.0 * np.pi * spec.l_over_lambda0 * offset
    return delta, qL


def _rhsFromABCD(params, spec, delta):
    A, B, C, D = abcdCoefficients(params, delta)
    qL = 2.0 * np.pi * spec.l_over_lambda0 * spec.rho * np.asarray(delta)
    norm = np.asarray(A) ** 2 + np.asarray(B) ** 2
    degenerate = ~(norm > ABCD_TOL)
    safe = np.where(degenerate, 1.0, norm)
    rhs = (np.cos(qL) * (A * C + B * D) + np.sin(qL) * (A * D - B * C)) / safe
    rhs = np.where(degenerate, np.nan, rhs)
    return rhs, degenerate, (A, B, C, D), qL


def _requireLossless(opName, params):
    if not params.lossless():
        raise LossyParams(
            opName,
            "Bloch analysis applies to lossless sites only "
            f"(kappa={params.kappa}, gamma={params.gamma}).",
        )


def cosBlochFromTransmission(params, spec, omegaRatio):
    """
    cos(K L) from the site transmission, ``Re[exp(-i q L) / t]``.

    Parameters
    ----------
    params : CqedParams
        Lossless site parameters.
    spec : LatticeSpec
        Lattice constant and rho.
    omegaRatio : float or numpy.ndarray
        Photon frequency in units of omega_eg.

    Returns
    -------
    rhs : float or numpy.ndarray
    """
    _requireLossless("cosBlochFromTransmission", params)
    delta, qL = _frequencyMap(spec, omegaRatio)
    amps, poles = maskedGeneralAmplitudes(params, delta)
    if np.any(poles):
        raise DegenerateDenominator(
            "cosBlochFromTransmission", "The site amplitudes have a pole at this frequency."
        )
    t = np.asarray(amps.t)
    if np.any(~(np.abs(t) >= 1e-14)):
        raise ZeroTransmission(
            "cosBlochFromTransmission",
            "Site transmission vanishes; 1/t is undefined at this frequency.",
        )
    rhs = np.real(np.exp(-1j * qL) / t)
    return float(rhs) if np.ndim(rhs) == 0 else rhs


def cosBlochFromABCD(params, spec, omegaRatio):
    """
    cos(K L) from the dispersion-relation coefficients.

    Returns
    -------
    rhs : float or numpy.ndarray
        ``[cos(qL)(AC + BD) + sin(qL)(AD - BC)] / (A^2 + B^2)``
    """
    delta, _ = _frequencyMap(spec, omegaRatio)
    rhs, degenerate, _, _ = _rhsFromABCD(params, spec, delta)
    if np.any(degenerate):
        raise DegenerateABCD(
            "cosBlochFromABCD", "A^2 + B^2 vanishes; the dispersion relation is undefined."
        )
    return float(rhs) if np.ndim(rhs) == 0 else rhs


def blochSamples(params, spec, omegas):
    """
    Tabulate the Bloch condition over a list of frequencies.

    Degenerate frequencies are returned with ``rhs = nan`` and treated as
    non-propagating.

    Returns
    -------
    samples : list of BlochSample
    """
    delta, qL = _frequencyMap(spec, omegas)
    delta = np.atleast_1d(delta)
    rhs, _, (A, B, C, D), _ = _rhsFromABCD(params, spec, delta)
    qL = np.atleast_1d(qL)
    samples = []
    for i, omega in enumerate(np.atleast_1d(omegas)):
        propagating = bool(np.abs(rhs[i]) <= 1.0)
        samples.append(
            BlochSample(
                omega_over_omega_eg=float(omega),
                q_l=float(qL[i]),
                rhs=float(rhs[i]),
                propagating=propagating,
                abcd=(float(A[i]), float(B[i]), float(C[i]), float(D[i])),
                k_l=float(np.arccos(rhs[i])) if propagating else float("nan"),
            )
        )
    return samples


def _scanIntervals(delta, rhs, degenerate, bounds, excess, edgeTol):
    """
    Gap intervals ``[lower, upper]`` of one sorted set of detunings.

    Runs with ``|rhs| > 1`` become intervals with bisected edges; a run that
    touches either end of the set takes the matching bound. Two runs are
    joined only when every point between them is degenerate.
    """
    with np.errstate(invalid="ignore"):
        inGap = np.abs(rhs) > 1.0
    nPoints = len(delta)

    def edge(inside, outside, boundary):
        if outside < 0 or outside >= nPoints:
            return boundary
        if degenerate[outside]:
            return delta[outside]
        a, b = sorted((delta[inside], delta[outside]))
        return scipy.optimize.root_scalar(
            excess, bracket=(a, b), method="bisect", xtol=edgeTol
        ).root

    intervals = []
    lastStop = None
    index = 0
    while index < nPoints:
        if not inGap[index]:
            index += 1
            continue
        start = index
        while index + 1 < nPoints and inGap[index + 1]:
            index += 1
        stop = index
        lower = edge(start, start - 1, bounds[0])
        upper = edge(stop, stop + 1, bounds[1])
        if intervals and np.all(degenerate[lastStop + 1 : start]):
            intervals[-1][1] = upper
        else:
            intervals.append([lower, upper])
        lastStop = stop
        index += 1
    return intervals


def findBandGaps(params, spec, omegaWindow, grid, edgeTol=EDGE_TOL):
    """
    Locate the forbidden bands inside a frequency window.

    The window is scanned on a detuning grid offset by half a step and each
    sign change of ``|rhs| - 1`` is bisected. Every gap found is re-sampled
    ``REFINE`` times more densely and split around any band the scan stepped
    over. Gaps are merged only across degenerate scan points.

    Parameters
    ----------
    params : CqedParams
        Lossless site parameters.
    spec : LatticeSpec
        Lattice constant and rho.
    omegaWindow : tuple
        ``(lo, hi)`` frequency window in units of omega_eg.
    grid : int
        Number of scan points, at least 100.
    edgeTol : float
        Bisection accuracy of the gap edges, in units of Gamma.

    Returns
    -------
    gaps : list of BandGap
        Sorted by lower edge.
    """
    _requireLossless("findBandGaps", params)
    if int(grid) < 100:
        raise PreconditionViolation(
            "findBandGaps", f"A band scan needs at least 100 points, got {grid}."
        )
    lo, hi = omegaWindow
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise EmptyWindow("findBandGaps", f"Invalid frequency window [{lo}, {hi}].")
    (deltaLo, deltaHi), _ = _frequencyMap(spec, [lo, hi])

    nPoints = int(grid)
    step = (deltaHi - deltaLo) / nPoints
    delta = deltaLo + (np.arange(nPoints) + 0.5) * step

    def evaluate(d):
        value, degenerate, _, _ = _rhsFromABCD(params, spec, d)
        return value, degenerate

    def excess(d):
        value, _ = evaluate(d)
        return float(np.abs(value) - 1.0)

    rhs, degenerate = evaluate(delta)
    intervals = []
    for lower, upper in _scanIntervals(delta, rhs, degenerate, (deltaLo, deltaHi), excess, edgeTol):
        # Bands narrower than one step can fall between two scan points
        nFine = REFINE * max(1, int(np.ceil((upper - lower) / step)))
        fine = np.linspace(lower, upper, nFine + 1)[1:-1]
        fineRhs, fineDegenerate = evaluate(fine)
        with np.errstate(invalid="ignore"):
            hidden = np.any(np.abs(fineRhs) <= 1.0)
        if hidden:
            intervals += _scanIntervals(
                fine, fineRhs, fineDegenerate, (lower, upper), excess, edgeTol
            )
        else:
            intervals.append([lower, upper])

    return [
        BandGap(omega_lo=1.0 + spec.rho * lower, omega_hi=1.0 + spec.rho * upper)
        for lower, upper in intervals
    ]


def principalGap(gaps):
    """Widest gap of a list, or None for an empty list."""
    if not gaps:
        return None
    return max(gaps, key=lambda gap: gap.width)
