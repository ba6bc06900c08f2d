"""
The main purpose of this class is to represent all relevant
information for a disorder-ensemble run: the array, the position
disorder and the detuning sweep over which realizations are averaged.

.. note:: This class should be created using the
    :meth:`pyJCArray.createDisorderProblem <jcarray.pyjcarray.pyJCArray.createDisorderProblem>` method.
"""

# =============================================================================
# Imports
# =============================================================================
import numpy as np

from ..cqed import detuningGrid
from ..disorder import ensembleAverage
from ..utilities import InvalidDisorder
from .base import JCProblem


class DisorderProblem(JCProblem):
    # Default options for class
    defaultOptions = dict(
        JCProblem.defaultOptions,
        poleTol=[float, 1e-14, "Scattering denominators below this magnitude are poles."],
        threads=[
            int,
            1,
            "Worker threads per MPI rank. Does not change the output.",
        ],
    )

    def __init__(self, name, params, lattice, disorder, grid, comm=None, options=None):
        """
        NOTE: This class should not be initialized directly by the user.
        Use pyJCArray.createDisorderProblem instead.

        Parameters
        ----------
        name : str
            Name of this problem
        params : CqedParams
            Parameters shared by all sites.
        lattice : LatticeSpec
            Mean (periodic) geometry of the array.
        disorder : DisorderSpec
            Disorder width, number of realizations and master seed.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        """
        self.lattice = lattice.validate()
        self.disorder = disorder.validate()
        if self.disorder.realizations < 2:
            raise InvalidDisorder(
                "DisorderProblem",
                f"An ensemble needs at least 2 realizations, got {disorder.realizations}.",
            )
        self.grid = tuple(grid)
        detuningGrid(self.grid)
        JCProblem.__init__(self, name, params, comm=comm, options=options)

    def setSeed(self, seed):
        """Replace the master seed of the ensemble."""
        self.disorder = self.disorder.replace(seed=seed).validate()

    def _solve(self):
        stats = ensembleAverage(
            self.params,
            self.lattice,
            self.disorder,
            self.grid,
            comm=self.comm,
            threads=max(1, self.getOption("threads")),
            poleTol=self.getOption("poleTol"),
        )
        if stats.failedRealizations:
            self.addWarning(
                f"{len(stats.failedRealizations)} realization(s) found no ordered "
                "configuration and were excluded."
            )
        return stats

    def getTable(self):
        formats = ["%.17g"] * 5 + ["%d"]
        return self.result.columns, self.result.table(), formats

    def getNumFlagged(self):
        if self.result is None:
            return 0
        return int(np.count_nonzero(self.result.m_effective < self.disorder.realizations))

    def getMetadata(self):
        meta = JCProblem.getMetadata(self)
        meta["mode"] = "disorder"
        meta["lattice"] = self.lattice.asDict()
        meta["phase_model"] = self.lattice.phase_model
        meta["disorder"] = self.disorder.asDict()
        meta["disorder_strength"] = self.disorder.strength()
        meta["seed"] = self.disorder.seed
        meta["sweep"] = {
            "delta_min": self.grid[0],
            "delta_max": self.grid[1],
            "n_points": self.grid[2],
        }
        if self.result is not None:
            meta["failed_realizations"] = list(self.result.failedRealizations)
        return meta

    def _summary(self):
        return (
            f"Averaged {self.disorder.realizations} realizations of "
            f"{self.lattice.n_sites} sites on {self.grid[2]} detunings."
        )
