"""
Position disorder of the ring cavities.

Each realization draws the site positions from independent normal
distributions centred on the periodic lattice. Realization ``i`` uses its
own random stream derived from the master seed and ``i``, so an ensemble is
reproducible under any split of the work across MPI ranks or threads.
"""

# =============================================================================
# Imports
# =============================================================================
import concurrent.futures
import dataclasses
from typing import ClassVar

import numpy as np

from .cqed import Spectrum, detuningGrid
from .scattering import POLE_TOL, maskedGeneralAmplitudes
from .transfer import chainIntensities, fiberPhase
from .utilities import (
    InvalidDisorder,
    OrderingUnsatisfiable,
    UnorderedPositions,
)

# Upper bound on redraws of one realization whose sites came out of order
MAX_ATTEMPTS = 1000


@dataclasses.dataclass(frozen=True)
class DisorderSpec:
    """
    Gaussian position disorder.

    Parameters
    ----------
    sigma_over_l : float
        Standard deviation of each position in units of the lattice constant,
        in (0, 0.5].
    realizations : int
        Number of realizations M.
    seed : int
        Master seed, an unsigned 64-bit integer.
    clamp : bool
        Redraw realizations whose sites are not strictly ordered.
    """

    sigma_over_l: float = 0.25
    realizations: int = 100
    seed: int = 0
    clamp: bool = True

    weakLimit: ClassVar[float] = 0.25

    def validate(self):
        if not np.isfinite(self.sigma_over_l) or not 0.0 < self.sigma_over_l <= 0.5:
            raise InvalidDisorder(
                "DisorderSpec",
                f"sigma_over_l must lie in (0, 0.5], got {self.sigma_over_l}.",
            )
        if isinstance(self.realizations, bool) or int(self.realizations) != self.realizations:
            raise InvalidDisorder(
                "DisorderSpec", f"realizations must be an integer, got {self.realizations}."
            )
        if self.realizations < 1:
            raise InvalidDisorder(
                "DisorderSpec", f"realizations must be >= 1, got {self.realizations}."
            )
        if isinstance(self.seed, bool) or int(self.seed) != self.seed:
            raise InvalidDisorder("DisorderSpec", f"seed must be an integer, got {self.seed}.")
        if not 0 <= self.seed < 2**64:
            raise InvalidDisorder(
                "DisorderSpec", f"seed must be an unsigned 64-bit integer, got {self.seed}."
            )
        return self

    def strength(self):
        """'weak' for sigma <= L/4, 'strong' above."""
        return "weak" if self.sigma_over_l <= self.weakLimit else "strong"

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def asDict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, eq=False)
class DisorderStats:
    """
    Ensemble statistics per detuning.

    ``m_effective`` counts the realizations that were not flagged at each point.
    The mean is NaN where it is zero and the standard error is NaN where it is
    below two.
    """

    delta: np.ndarray
    mean_T: np.ndarray
    stderr_T: np.ndarray
    mean_R: np.ndarray
    stderr_R: np.ndarray
    m_effective: np.ndarray
    failedRealizations: tuple = ()

    columns: ClassVar[tuple] = (
        "delta",
        "mean_T",
        "stderr_T",
        "mean_R",
        "stderr_R",
        "m_effective",
    )

    def __len__(self):
        return len(self.delta)

    def table(self):
        return np.column_stack([getattr(self, name) for name in self.columns])


def realizationGenerator(seed, index):
    """Random generator of one realization, independent of all other indices."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))
    )


def samplePositions(spec, dspec, index, maxAttempts=MAX_ATTEMPTS):
    """
    Draw the site positions of one disorder realization.

    Parameters
    ----------
    spec : LatticeSpec
        Lattice whose periodic sites are the mean positions ``j L``.
    dspec : DisorderSpec
        Disorder width, master seed and ordering policy.
    index : int
        Realization index.
    maxAttempts : int
        Redraw budget when ``dspec.clamp`` is set.

    Returns
    -------
    positions : numpy.ndarray
        N positions in units of the resonant wavelength.
    """
    rng = realizationGenerator(dspec.seed, index)
    mean = np.arange(spec.n_sites) * spec.l_over_lambda0
    sigma = dspec.sigma_over_l * spec.l_over_lambda0
    for _ in range(maxAttempts):
        positions = rng.normal(mean, sigma)
        if not dspec.clamp or np.all(np.diff(positions) > 0.0):
            return positions
    raise OrderingUnsatisfiable(
        "samplePositions",
        f"No ordered configuration for realization {index} after {maxAttempts} draws "
        f"(sigma/L = {dspec.sigma_over_l}).",
    )


def _realizationIntensities(params, spec, positions, delta, amps, poles):
    spacings = np.diff(positions)
    phases = [np.zeros_like(delta)]
    phases += [fiberPhase(spec, delta, lOverLambda0=spacing) for spacing in spacings]
    return chainIntensities(amps.t, amps.r, poles, phases)


def realizationSpectrum(params, spec, positions, grid, poleTol=POLE_TOL):
    """
    Spectrum of one disordered array.

    The first site has no fiber ahead of it; every later block carries the
    phase of its realized spacing.

    Parameters
    ----------
    params : CqedParams
        Parameters shared by all sites.
    spec : LatticeSpec
        Phase model and rho.
    positions : array_like
        Strictly increasing site positions in units of the resonant wavelength.
    grid : tuple
        ``(lo, hi, nPoints)`` detuning sweep.

    Returns
    -------
    spectrum : Spectrum
    """
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 1 or len(positions) == 0:
        raise UnorderedPositions("realizationSpectrum", "At least one position is required.")
    if np.any(np.diff(positions) <= 0.0):
        raise UnorderedPositions(
            "realizationSpectrum", "Site positions must be strictly increasing."
        )
    delta = detuningGrid(grid)
    amps, poles = maskedGeneralAmplitudes(params, delta, poleTol)
    T, R, flag = _realizationIntensities(params, spec, positions, delta, amps, poles)
    return Spectrum(delta=delta, T=T, R=R, flag=flag)


def _runRealization(params, spec, dspec, index, delta, amps, poles):
    """Flagged (T, R) of one realization; unordered or failed draws flag every point."""
    try:
        positions = samplePositions(spec, dspec, index)
    except OrderingUnsatisfiable:
        return index, None, None, None
    if np.any(np.diff(positions) <= 0.0):
        flag = np.ones(len(delta), dtype=bool)
        return index, np.zeros(len(delta)), np.zeros(len(delta)), flag
    T, R, flag = _realizationIntensities(params, spec, positions, delta, amps, poles)
    return index, T, R, flag.astype(bool)


def ensembleAverage(params, spec, dspec, grid, comm=None, threads=1, poleTol=POLE_TOL):
    """
    Mean spectrum and standard errors over disorder realizations.

    Realizations ``0 .. M-1`` are split round-robin over the ranks of ``comm``
    and, within a rank, over ``threads`` worker threads. Results are reduced
    in realization-index order, so the statistics do not depend on the split.

    Parameters
    ----------
    params : CqedParams
        Parameters shared by all sites.
    spec : LatticeSpec
        Lattice (N, L, phase model).
    dspec : DisorderSpec
        Disorder width, number of realizations and master seed.
    grid : tuple
        ``(lo, hi, nPoints)`` detuning sweep.
    comm : mpi4py.MPI.Intracomm, optional
        Communicator; None runs serially.
    threads : int
        Worker threads per rank.

    Returns
    -------
    stats : DisorderStats
    """
    dspec.validate()
    if dspec.realizations < 2:
        raise InvalidDisorder(
            "ensembleAverage",
            f"An ensemble needs at least 2 realizations, got {dspec.realizations}.",
        )
    spec.validate()
    delta = detuningGrid(grid)
    amps, poles = maskedGeneralAmplitudes(params, delta, poleTol)

    rank = 0 if comm is None else comm.rank
    size = 1 if comm is None else comm.size
    indices = range(rank, dspec.realizations, size)

    def work(index):
        return _runRealization(params, spec, dspec, index, delta, amps, poles)

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
            local = list(executor.map(work, indices))
    else:
        local = [work(index) for index in indices]

    if comm is not None and size > 1:
        gathered = [item for chunk in comm.allgather(local) for item in chunk]
    else:
        gathered = local
    gathered.sort(key=lambda item: item[0])

    nPoints = len(delta)
    allT = np.zeros((dspec.realizations, nPoints))
    allR = np.zeros((dspec.realizations, nPoints))
    excluded = np.ones((dspec.realizations, nPoints), dtype=bool)
    failed = []
    for index, T, R, flag in gathered:
        if T is None:
            failed.append(index)
            continue
        allT[index] = T
        allR[index] = R
        excluded[index] = flag | poles

    meanT, stderrT, mEff = _meanAndStderr(allT, excluded)
    meanR, stderrR, _ = _meanAndStderr(allR, excluded)
    return DisorderStats(
        delta=delta,
        mean_T=meanT,
        stderr_T=stderrT,
        mean_R=meanR,
        stderr_R=stderrR,
        m_effective=mEff,
        failedRealizations=tuple(failed),
    )


def _meanAndStderr(samples, excluded):
    kept = ~excluded
    count = kept.sum(axis=0)
    values = np.where(kept, samples, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = np.where(count > 0, values.sum(axis=0) / count, np.nan)
        squares = np.where(kept, (samples - mean) ** 2, 0.0).sum(axis=0)
        sd = np.sqrt(squares / (count - 1))
        stderr = np.where(count > 1, sd / np.sqrt(count), np.nan)
    return mean, stderr, count
