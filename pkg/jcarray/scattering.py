"""
Single-site scattering of a waveguide photon off one atom-cavity site.

The closed-form amplitudes are cross-checked by an independent dense solve of
the five stationary transport equations in the unknowns ``(t, r, e_a, e_b, e_q)``.
Every amplitude function accepts a scalar detuning or an array of detunings.
"""

# =============================================================================
# Imports
# =============================================================================
import dataclasses
import warnings

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.signal

from .cqed import (
    ScatteringAmplitudes,
    Spectrum,
    checkDetuning,
    detuningGrid,
    effectiveDetunings,
)
from .utilities import (
    DegenerateDenominator,
    EmptyWindow,
    PreconditionViolation,
    SingularSystem,
    SubcriticalCoupling,
)

# Denominators below this magnitude are treated as poles
POLE_TOL = 1e-14
# Group velocity, fixed to one so that V^2 = 2 Gamma
GROUP_VELOCITY = 1.0


@dataclasses.dataclass(frozen=True)
class AmplitudeSolution:
    """
    Full solution of the stationary single-site transport equations.

    ``e_a`` and ``e_b`` are the clockwise and counterclockwise cavity-mode
    amplitudes and ``e_q`` the atomic excitation amplitude.
    """

    t: complex
    r: complex
    e_a: complex
    e_b: complex
    e_q: complex

    def vector(self):
        return np.array([self.t, self.r, self.e_a, self.e_b, self.e_q], dtype=complex)

    def amplitudes(self):
        return ScatteringAmplitudes(t=self.t, r=self.r)


def maskedGeneralAmplitudes(params, delta, poleTol=POLE_TOL):
    """
    Evaluate the general closed-form amplitudes, marking poles instead of raising.

    Parameters
    ----------
    params : CqedParams
        Site parameters.
    delta : float or numpy.ndarray
        Photon detuning(s).
    poleTol : float
        Denominators with a smaller magnitude are reported as poles.

    Returns
    -------
    amps : ScatteringAmplitudes
        Amplitudes with NaN entries at the poles.
    poles : bool or numpy.ndarray
        True where the denominator vanished.
    """
    deltaC, deltaEg = effectiveDetunings(params, delta)
    bigGamma = params.big_gamma
    eta = params.eta
    etaSq = np.abs(eta) ** 2
    gSq = np.abs(params.g) ** 2
    shifted = deltaC + 1j * bigGamma

    if params.g == 0.0:
        # The atomic factor cancels between numerator and denominator
        denominator = shifted**2 - etaSq
        tNum = deltaC**2 + bigGamma**2 - etaSq
        rNum = -2j * bigGamma * eta * np.ones_like(deltaC)
    else:
        denominator = (
            shifted * (deltaEg * shifted - 2.0 * gSq) - 2.0 * gSq * eta - etaSq * deltaEg
        )
        tNum = (
            deltaC * (deltaEg * deltaC - 2.0 * gSq)
            + deltaEg * (bigGamma**2 - etaSq)
            - 2.0 * gSq * eta
        )
        rNum = -2j * bigGamma * (deltaEg * eta + gSq)

    poles = np.abs(denominator) < poleTol
    safe = np.where(poles, 1.0, denominator)
    t = np.where(poles, np.nan, tNum / safe)
    r = np.where(poles, np.nan, rNum / safe)
    if t.ndim == 0:
        t, r, poles = complex(t), complex(r), bool(poles)
    return ScatteringAmplitudes(t=t, r=r), poles


def generalAmplitudes(params, delta, poleTol=POLE_TOL):
    """
    General transmission and reflection amplitudes of one site.

    Parameters
    ----------
    params : CqedParams
        Site parameters (coupling, losses, backscattering, atom-cavity detuning).
    delta : float or numpy.ndarray
        Photon detuning(s) from the atomic transition.
    poleTol : float
        Pole tolerance on the common denominator.

    Returns
    -------
    amps : ScatteringAmplitudes
        Complex ``t`` and ``r``.
    """
    amps, poles = maskedGeneralAmplitudes(params, delta, poleTol)
    if np.any(poles):
        raise DegenerateDenominator(
            "generalAmplitudes",
            "The scattering denominator vanishes at detuning(s) "
            f"{np.atleast_1d(np.asarray(delta))[np.atleast_1d(poles)]}.",
        )
    return amps


def _requireZero(opName, params, names):
    nonzero = [name for name in names if getattr(params, name) != 0.0]
    if nonzero:
        raise PreconditionViolation(
            opName, f"Requires {', '.join(names)} = 0; nonzero: {', '.join(nonzero)}."
        )


def decoupledLosslessAmplitudes(params, delta):
    """
    Amplitudes of a decoupled, lossless site (g = kappa = gamma = delta_ac = 0).
    Only the ring backscattering eta shapes the spectrum.
    """
    _requireZero(
        "decoupledLosslessAmplitudes", params, ("g", "kappa", "gamma", "delta_ac")
    )
    delta = checkDetuning(delta)
    bigGamma, eta = params.big_gamma, params.eta
    denominator = (bigGamma - 1j * delta) ** 2 + eta**2
    t = -(bigGamma**2 + delta**2 - eta**2) / denominator
    r = 2j * bigGamma * eta / denominator
    return ScatteringAmplitudes(t=t, r=r)


def decoupledLossyAmplitudes(params, delta):
    """
    Amplitudes of a decoupled site with equal cavity and atomic loss (g = delta_ac = 0,
    gamma = kappa).
    """
    _requireZero("decoupledLossyAmplitudes", params, ("g", "delta_ac"))
    if params.gamma != params.kappa:
        raise PreconditionViolation(
            "decoupledLossyAmplitudes",
            f"Requires gamma = kappa, got gamma={params.gamma}, kappa={params.kappa}.",
        )
    delta = checkDetuning(delta)
    bigGamma, eta, kappa = params.big_gamma, params.eta, params.kappa
    denominator = (bigGamma + kappa - 1j * delta) ** 2 + eta**2
    t = -(bigGamma**2 - eta**2 - (kappa - 1j * delta) ** 2) / denominator
    r = 2j * bigGamma * eta / denominator
    return ScatteringAmplitudes(t=t, r=r)


def noBackscatterAmplitudes(params, delta):
    """
    Amplitudes of a coupled site without backscattering (eta = delta_ac = 0),
    valid from weak to strong coupling.
    """
    _requireZero("noBackscatterAmplitudes", params, ("eta", "delta_ac"))
    delta = checkDetuning(delta)
    bigGamma, gSq = params.big_gamma, params.g**2
    cavity = bigGamma + params.kappa - 1j * delta
    atom = params.gamma - 1j * delta
    denominator = cavity * (atom * cavity + 2.0 * gSq)
    r = 2.0 * gSq * bigGamma / denominator
    t = 1.0 - 2.0 * bigGamma * (atom * cavity + gSq) / denominator
    return ScatteringAmplitudes(t=t, r=r)


def oracleSystem(params, delta):
    """
    Assemble the 5x5 stationary transport equations for one detuning.

    Returns
    -------
    A : numpy.ndarray
        Complex (5, 5) matrix acting on ``(t, r, e_a, e_b, e_q)``.
    b : numpy.ndarray
        Complex right-hand side.
    """
    deltaC, deltaEg = effectiveDetunings(params, float(delta))
    vg = GROUP_VELOCITY
    V = np.sqrt(2.0 * params.big_gamma * vg)
    g, eta = params.g, params.eta
    A = np.array(
        [
            [-1j * vg, 0.0, V, 0.0, 0.0],
            [0.0, -1j * vg, 0.0, V, 0.0],
            [0.5 * V, 0.0, -deltaC, eta, g],
            [0.0, 0.5 * V, np.conj(eta), -deltaC, np.conj(g)],
            [0.0, 0.0, np.conj(g), g, -deltaEg],
        ],
        dtype=complex,
    )
    b = np.array([-1j * vg, 0.0, -0.5 * V, 0.0, 0.0], dtype=complex)
    return A, b


def oracleSolve(params, delta, singularTol=POLE_TOL):
    """
    Solve the stationary transport equations by LU factorization with partial pivoting.

    Parameters
    ----------
    params : CqedParams
        Site parameters.
    delta : float
        A single photon detuning.
    singularTol : float
        Relative pivot size below which the system is reported singular.

    Returns
    -------
    solution : AmplitudeSolution
    """
    A, b = oracleSystem(params, delta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A)
    scale = max(1.0, np.abs(A).max())
    if np.abs(np.diag(lu)).min() <= singularTol * scale:
        raise SingularSystem(
            "oracleSolve", f"Transport equations are singular at detuning {delta}."
        )
    x = scipy.linalg.lu_solve((lu, piv), b)
    return AmplitudeSolution(*(complex(value) for value in x))


def siteSpectrum(params, grid, poleTol=POLE_TOL):
    """
    Single-site transmission and reflection spectrum over a uniform grid.
    Poles are flagged and written as NaN.
    """
    delta = detuningGrid(grid)
    amps, poles = maskedGeneralAmplitudes(params, delta, poleTol)
    return Spectrum(delta=delta, T=amps.T, R=amps.R, flag=poles.astype(int))


def findTransmissionMinima(params, window, grid=2001, xtol=1e-6, prominence=1e-8):
    """
    Locate the local minima of the single-site transmission.

    A uniform pre-scan (at least 2001 points) brackets each dip, which is then
    refined by golden-section search.

    Parameters
    ----------
    params : CqedParams
        Site parameters.
    window : tuple
        ``(lo, hi)`` detuning window.
    grid : int
        Requested pre-scan size (>= 3).
    xtol : float
        Absolute accuracy of each refined minimum.
    prominence : float
        Minimum dip depth, screens out round-off ripples of a flat spectrum.

    Returns
    -------
    minima : list of float
        Detunings of the transmission minima in ascending order.
    """
    lo, hi = window
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi or int(grid) < 3:
        raise EmptyWindow(
            "findTransmissionMinima",
            f"Cannot scan window [{lo}, {hi}] with {grid} points.",
        )

    nScan = max(int(grid), 2001)
    delta = np.linspace(lo, hi, nScan)
    step = delta[1] - delta[0]
    amps, poles = maskedGeneralAmplitudes(params, delta)
    T = amps.T
    if np.all(poles):
        return []
    T = np.where(poles, np.nanmax(T), T)

    peaks, _ = scipy.signal.find_peaks(-T, prominence=prominence)

    minima = []
    for index in peaks:
        center = delta[index]

        # Search in a coordinate of order one so the relative tolerance is absolute
        def shiftedT(s):
            amps, pole = maskedGeneralAmplitudes(params, center + s - 1.0)
            return np.inf if pole else float(amps.T)

        try:
            result = scipy.optimize.minimize_scalar(
                shiftedT,
                bracket=(1.0 - step, 1.0, 1.0 + step),
                method="golden",
                tol=0.5 * xtol,
            )
            minima.append(float(center + result.x - 1.0))
        except ValueError:
            # Flat-bottomed dip, keep the grid point
            minima.append(float(center))
    return sorted(minima)


def rabiSplitting(params):
    """
    Waveguide-modified vacuum Rabi splitting 2 sqrt(2 g^2 - Gamma^2).
    """
    radicand = 2.0 * params.g**2 - params.big_gamma**2
    if radicand <= 0.0:
        raise SubcriticalCoupling(
            "rabiSplitting",
            f"No Rabi splitting for 2 g^2 <= Gamma^2 (g={params.g}, "
            f"Gamma={params.big_gamma}).",
        )
    return 2.0 * np.sqrt(radicand)
