"""
Transfer matrices of finite Jaynes-Cummings arrays.

A block is one fiber segment followed by one atom-cavity site. Its 2x2
transfer matrix maps the (forward, backward) field amplitudes on the left of
the block to those on its right. Blocks listed in propagation order cascade
as ``blocks[-1] @ ... @ blocks[0]``.

Matrices are stored as numpy arrays of shape ``(..., 2, 2)`` so that a whole
detuning sweep is carried through the cascade at once.
"""

# =============================================================================
# Imports
# =============================================================================
import dataclasses
from typing import ClassVar, Optional

import numpy as np

from .cqed import ScatteringAmplitudes, Spectrum, checkDetuning, detuningGrid
from .scattering import POLE_TOL, maskedGeneralAmplitudes
from .utilities import EmptyChain, InvalidLattice, SingularExtraction, ZeroTransmission

# |t| below this is full reflection, where a block has no transfer matrix
ZERO_TRANSMISSION_TOL = 1e-14
# |m22| below this makes the boundary problem singular
EXTRACTION_TOL = 1e-14


@dataclasses.dataclass(frozen=True)
class LatticeSpec:
    """
    Geometry of a periodic array.

    Parameters
    ----------
    n_sites : int
        Number of sites N.
    l_over_lambda0 : float
        Lattice constant in units of the resonant wavelength.
    phase_model : str
        'markovian' (frequency-independent fiber phase) or 'dispersive'.
    rho : float
        Scale ratio Gamma / omega_eg linking the two frequency units.
    ring_radius_over_lambda0 : float, optional
        Ring radius, carried as metadata only.
    """

    n_sites: int = 1
    l_over_lambda0: float = 0.25
    phase_model: str = "markovian"
    rho: float = 1e-3
    ring_radius_over_lambda0: Optional[float] = None

    phaseModels: ClassVar[tuple] = ("markovian", "dispersive")

    def validate(self):
        """Check the lattice invariants."""
        if isinstance(self.n_sites, bool) or int(self.n_sites) != self.n_sites:
            raise InvalidLattice("LatticeSpec", f"n_sites must be an integer, got {self.n_sites}.")
        if self.n_sites < 1:
            raise InvalidLattice("LatticeSpec", f"n_sites must be >= 1, got {self.n_sites}.")
        if not np.isfinite(self.l_over_lambda0) or self.l_over_lambda0 <= 0.0:
            raise InvalidLattice(
                "LatticeSpec", f"l_over_lambda0 must be positive, got {self.l_over_lambda0}."
            )
        if self.phase_model not in self.phaseModels:
            raise InvalidLattice(
                "LatticeSpec",
                f"phase_model must be one of {self.phaseModels}, got '{self.phase_model}'.",
            )
        if not np.isfinite(self.rho) or self.rho < 0.0:
            raise InvalidLattice("LatticeSpec", f"rho must be non-negative, got {self.rho}.")
        radius = self.ring_radius_over_lambda0
        if radius is not None and not 0.0 < radius < 0.05:
            raise InvalidLattice(
                "LatticeSpec",
                f"ring_radius_over_lambda0 must lie in (0, 0.05), got {radius}.",
            )
        return self

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def asDict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, eq=False)
class TransferMatrix:
    """
    A 2x2 complex transfer matrix, or a stack of them with shape (..., 2, 2).

    ``determinant`` carries the product of the factor determinants through a
    cascade; reciprocal blocks start from exactly 1. Deep stop bands drive the
    entries of a product far beyond the range where ``m11 m22 - m12 m21`` can
    be formed without cancellation.
    """

    matrix: np.ndarray
    determinant: Optional[np.ndarray] = None  # None: computed from the entries

    @classmethod
    def identity(cls, shape=()):
        return cls(np.broadcast_to(np.eye(2, dtype=complex), tuple(shape) + (2, 2)).copy())

    @property
    def m11(self):
        return self.matrix[..., 0, 0]

    @property
    def m12(self):
        return self.matrix[..., 0, 1]

    @property
    def m21(self):
        return self.matrix[..., 1, 0]

    @property
    def m22(self):
        return self.matrix[..., 1, 1]

    @property
    def det(self):
        if self.determinant is not None:
            return self.determinant
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other):
        return TransferMatrix(self.matrix @ other.matrix, self.det * other.det)

    def allclose(self, other, atol=1e-12):
        return np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol)


def fiberPhase(spec, delta, lOverLambda0=None):
    """
    Phase accumulated by a photon over one fiber segment.

    Parameters
    ----------
    spec : LatticeSpec
        Lattice providing the phase model, rho and the default segment length.
    delta : float or numpy.ndarray
        Photon detuning(s) in units of Gamma.
    lOverLambda0 : float, optional
        Segment length in units of the resonant wavelength. Defaults to the
        lattice constant.

    Returns
    -------
    phi : float or numpy.ndarray
        ``2 pi L/lambda0`` (markovian) or ``2 pi L/lambda0 (1 + rho delta)`` (dispersive).
    """
    delta = checkDetuning(delta)
    length = spec.l_over_lambda0 if lOverLambda0 is None else lOverLambda0
    if spec.phase_model == "dispersive":
        phi = 2.0 * np.pi * length * (1.0 + spec.rho * delta)
    else:
        phi = 2.0 * np.pi * length * np.ones_like(delta)
    return float(phi) if np.ndim(phi) == 0 else phi


def _blockTransfer(t, r, phi, form="reciprocal"):
    t, r, phi = np.broadcast_arrays(
        np.asarray(t, dtype=complex), np.asarray(r, dtype=complex), np.asarray(phi)
    )
    forward = np.exp(1j * phi)
    backward = np.exp(-1j * phi)
    block = np.empty(t.shape + (2, 2), dtype=complex)
    if form == "reciprocal":
        block[..., 0, 0] = forward * (t**2 - r**2) / t
        block[..., 0, 1] = r * backward / t
        # Unit determinant for any rates
        determinant = np.ones(t.shape, dtype=complex)
    elif form == "time-reversal":
        block[..., 0, 0] = forward / np.conj(t)
        block[..., 0, 1] = -np.conj(r) * backward / np.conj(t)
        determinant = (1.0 - np.abs(r) ** 2) / np.abs(t) ** 2 + 0j
    else:
        raise ValueError(f"Unknown block form '{form}'")
    block[..., 1, 0] = -r * forward / t
    block[..., 1, 1] = backward / t
    return TransferMatrix(block, determinant)


def _blockScattering(t, r, phi):
    """
    Scattering set ``(t, a, b)`` of one block: transmission, reflection seen
    from Port 1 (through the fiber) and reflection seen from Port 2.
    """
    forward = np.exp(1j * np.asarray(phi))
    return t * forward, r * forward**2, r * np.ones_like(forward)


def _starProduct(first, second, singularTol):
    """
    Redheffer star product of two reciprocal two-ports, ``first`` on the left.

    Returns
    -------
    combined : tuple
        ``(t, a, b)`` of the pair.
    singular : numpy.ndarray of bool
        True where the multiple-reflection denominator vanished.
    """
    t1, a1, b1 = first
    t2, a2, b2 = second
    denominator = 1.0 - b1 * a2
    singular = ~(np.abs(denominator) > singularTol)
    safe = np.where(singular, 1.0, denominator)
    t = t1 * t2 / safe
    a = a1 + t1**2 * a2 / safe
    b = b2 + t2**2 * b1 / safe
    return (t, a, b), singular


def _starPower(block, nBlocks, singularTol):
    """``nBlocks`` identical two-ports combined by repeated squaring."""
    singular = np.zeros(np.shape(block[0]), dtype=bool)
    result = None
    power = block
    while True:
        if nBlocks & 1:
            if result is None:
                result = power
            else:
                result, hit = _starProduct(result, power, singularTol)
                singular |= hit
        nBlocks >>= 1
        if not nBlocks:
            return result, singular
        power, hit = _starProduct(power, power, singularTol)
        singular |= hit


def blockMatrix(amps, phi, form="reciprocal", zeroTol=ZERO_TRANSMISSION_TOL):
    """
    Transfer matrix of one block (fiber segment with phase ``phi``, then the site).

    Parameters
    ----------
    amps : ScatteringAmplitudes
        Site amplitudes, scalar or per detuning.
    phi : float or numpy.ndarray
        Fiber phase(s).
    form : str
        'reciprocal' (default) is exact for lossy sites; 'time-reversal' uses the
        conjugated entries, which coincide with it for lossless sites.
    zeroTol : float
        Transmission magnitude treated as full reflection.

    Returns
    -------
    block : TransferMatrix
    """
    t = np.asarray(amps.t, dtype=complex)
    if np.any(~(np.abs(t) > zeroTol)):
        raise ZeroTransmission(
            "blockMatrix",
            "Site transmission vanishes; a fully reflecting block has no transfer matrix.",
        )
    return _blockTransfer(t, amps.r, phi, form)


def _isIdentical(blocks):
    first = blocks[0]
    return all(b is first or np.array_equal(b.matrix, first.matrix) for b in blocks[1:])


def cascade(blocks):
    """
    Ordered product of block transfer matrices.

    Parameters
    ----------
    blocks : list of TransferMatrix
        Blocks in propagation order, the first being met first by a photon
        incident from Port 1.

    Returns
    -------
    total : TransferMatrix
        ``blocks[-1] @ ... @ blocks[0]``. Identical blocks are raised to the
        N-th power by repeated squaring.
    """
    blocks = list(blocks)
    if len(blocks) == 0:
        raise EmptyChain("cascade", "Cannot cascade an empty list of blocks.")
    if len(blocks) > 1 and _isIdentical(blocks):
        first = blocks[0]
        return TransferMatrix(
            np.linalg.matrix_power(first.matrix, len(blocks)), first.det ** len(blocks)
        )
    total = blocks[0]
    for block in blocks[1:]:
        total = block @ total
    return total


def extractAmplitudes(total, singularTol=EXTRACTION_TOL):
    """
    Net amplitudes for a photon incident from Port 1 only.

    Imposing ``(t, 0) = M (1, r)`` gives ``r = -m21/m22`` and ``t = det(M)/m22``.

    Returns
    -------
    amps : ScatteringAmplitudes
    """
    m22 = total.m22
    if np.any(~(np.abs(m22) > singularTol)):
        raise SingularExtraction(
            "extractAmplitudes", "m22 vanishes; the boundary problem has no solution."
        )
    return ScatteringAmplitudes(t=total.det / m22, r=-total.m21 / m22)


def chainIntensities(
    t,
    r,
    sitePoles,
    phases,
    zeroTol=ZERO_TRANSMISSION_TOL,
    singularTol=EXTRACTION_TOL,
):
    """
    Net T and R of a chain of identical sites over a detuning sweep.

    The blocks are combined as two-port scattering sets with the Redheffer
    star product, which keeps ``T + R = 1`` for lossless sites where the
    transfer-matrix entries overflow. Site poles, fully reflecting sites and
    vanishing multiple-reflection denominators are flagged, with ``T = 0``
    and ``R = min(|r_site|^2, 1)`` (1 at a pole).

    Parameters
    ----------
    t, r : numpy.ndarray
        Site amplitudes per detuning.
    sitePoles : numpy.ndarray
        Detunings where the site amplitudes are undefined.
    phases : list of numpy.ndarray or tuple
        One fiber phase array per block in propagation order, or ``(phi, n)``
        for ``n`` identical blocks.

    Returns
    -------
    T, R : numpy.ndarray
    flag : numpy.ndarray of int
    """
    t = np.asarray(t, dtype=complex)
    r = np.asarray(r, dtype=complex)
    zero = np.asarray(sitePoles, dtype=bool) | ~(np.abs(t) > zeroTol)
    tSafe = np.where(zero, 1.0, t)
    rSafe = np.where(zero, 0.0, r)

    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        if isinstance(phases, tuple):
            phi, nBlocks = phases
            total, singular = _starPower(_blockScattering(tSafe, rSafe, phi), nBlocks, singularTol)
        else:
            total = _blockScattering(tSafe, rSafe, phases[0])
            singular = np.zeros(t.shape, dtype=bool)
            for phi in phases[1:]:
                total, hit = _starProduct(total, _blockScattering(tSafe, rSafe, phi), singularTol)
                singular |= hit

        tTotal, aTotal, _ = total
        singular = singular | ~np.isfinite(tTotal) | ~np.isfinite(aTotal)
        siteR = np.abs(r) ** 2
        flagR = np.where(np.isfinite(siteR), np.minimum(siteR, 1.0), 1.0)
        flag = zero | singular
        T = np.where(flag, 0.0, np.abs(tTotal) ** 2)
        R = np.where(flag, flagR, np.abs(aTotal) ** 2)
    return T, R, flag.astype(int)


def arraySpectrum(params, spec, grid, poleTol=POLE_TOL):
    """
    Transmission and reflection spectrum of a finite periodic array.

    Parameters
    ----------
    params : CqedParams
        Parameters shared by all sites.
    spec : LatticeSpec
        Number of sites, lattice constant and phase model.
    grid : tuple
        ``(lo, hi, nPoints)`` detuning sweep.

    Returns
    -------
    spectrum : Spectrum
        One row per grid point; singular points are flagged, never dropped.
    """
    spec.validate()
    delta = detuningGrid(grid)
    amps, poles = maskedGeneralAmplitudes(params, delta, poleTol)
    phi = fiberPhase(spec, delta)
    T, R, flag = chainIntensities(amps.t, amps.r, poles, (phi, spec.n_sites))
    return Spectrum(delta=delta, T=T, R=R, flag=flag)
