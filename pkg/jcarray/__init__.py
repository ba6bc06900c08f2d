"""
jcarray computes single-photon transmission and reflection spectra of
waveguide-coupled Jaynes-Cummings sites, of finite and infinite periodic
arrays of such sites, and of position-disordered arrays.
"""

__version__ = "1.0.0"

__all__ = []

# Import jcarray modules
from . import cqed
from . import scattering
from . import transfer
from . import bloch
from . import disorder
from . import config
from . import problems
from .cqed import CqedParams, ScatteringAmplitudes, Spectrum
from .transfer import LatticeSpec
from .disorder import DisorderSpec
from .config import RunConfig, loadConfig, parseConfig
from .pyjcarray import pyJCArray

__all__.extend(
    [
        "cqed",
        "scattering",
        "transfer",
        "bloch",
        "disorder",
        "config",
        "problems",
        "CqedParams",
        "ScatteringAmplitudes",
        "Spectrum",
        "LatticeSpec",
        "DisorderSpec",
        "RunConfig",
        "loadConfig",
        "parseConfig",
        "pyJCArray",
    ]
)
