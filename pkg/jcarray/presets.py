"""
Named parameter regimes.

``case1`` ... ``case6`` are the array regimes used for finite-array and
disordered-array spectra. ``bands-a`` ... ``bands-e`` are the lossless
dispersion panels. ``single-1`` ... ``single-6`` are representative
single-site spectra, one per swept rate.
"""

from .cqed import CqedParams
from .utilities import InvalidValue

# (g, kappa, gamma, eta, delta_ac)
_PRESET_RATES = {
    # Decoupled atoms with no loss
    "case1": (0.0, 0.0, 0.0, 1.0, 0.0),
    # Decoupled atoms with loss
    "case2": (0.0, 0.5, 0.5, 1.0, 0.0),
    # Weak coupling with no backscattering
    "case3": (0.25, 0.5, 0.5, 0.0, 0.0),
    # Weak coupling with large backscattering
    "case4": (0.25, 0.5, 0.5, 2.0, 0.0),
    # Strong coupling with large backscattering
    "case5": (5.0, 0.5, 0.5, 2.0, 0.0),
    # Strong coupling with atom-cavity detuning
    "case6": (5.0, 0.5, 0.5, 2.0, 4.0),
    "bands-a": (0.0, 0.0, 0.0, 1.0, 0.0),
    "bands-b": (0.25, 0.0, 0.0, 0.0, 0.0),
    "bands-c": (0.25, 0.0, 0.0, 2.0, 0.0),
    "bands-d": (5.0, 0.0, 0.0, 2.0, 0.0),
    "bands-e": (5.0, 0.0, 0.0, 2.0, 4.0),
    "single-1": (0.0, 0.0, 0.0, 2.0, 0.0),
    "single-2": (0.0, 2.0, 2.0, 1.0, 0.0),
    "single-3": (5.0, 0.5, 0.5, 0.0, 0.0),
    "single-4": (0.5, 2.0, 2.0, 2.0, 0.0),
    "single-5": (2.0, 0.5, 0.5, 2.0, 0.0),
    "single-6": (2.0, 0.5, 0.5, 2.0, 5.0),
}

PRESET_NAMES = tuple(_PRESET_RATES)

# Half-width of the default dispersion window, in units of rho = Gamma/omega_eg
BAND_WINDOW_HALF_WIDTH = 15.0


def getPreset(name):
    """
    Look up a named regime.

    Parameters
    ----------
    name : str
        Preset name (case-insensitive).

    Returns
    -------
    params : CqedParams
        The regime's rates in units of Gamma.
    """
    key = name.lower()
    if key not in _PRESET_RATES:
        raise InvalidValue(
            "getPreset",
            f"Unknown preset '{name}'. Valid presets are: {', '.join(PRESET_NAMES)}.",
        )
    g, kappa, gamma, eta, deltaAc = _PRESET_RATES[key]
    return CqedParams(g=g, kappa=kappa, gamma=gamma, eta=eta, delta_ac=deltaAc)


def isBandPreset(name):
    return name is not None and name.lower().startswith("bands-")
