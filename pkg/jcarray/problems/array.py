"""
The main purpose of this class is to represent all relevant
information for the spectrum of a finite periodic array.

.. note:: This class should be created using the
    :meth:`pyJCArray.createArrayProblem <jcarray.pyjcarray.pyJCArray.createArrayProblem>` method.
"""

# =============================================================================
# Imports
# =============================================================================
from ..cqed import detuningGrid
from ..transfer import arraySpectrum
from .base import JCProblem, spectrumFormats


class ArrayProblem(JCProblem):
    # Default options for class
    defaultOptions = dict(
        JCProblem.defaultOptions,
        poleTol=[float, 1e-14, "Scattering denominators below this magnitude are poles."],
    )

    def __init__(self, name, params, lattice, grid, comm=None, options=None):
        """
        NOTE: This class should not be initialized directly by the user.
        Use pyJCArray.createArrayProblem instead.

        Parameters
        ----------
        name : str
            Name of this problem
        params : CqedParams
            Parameters shared by all sites.
        lattice : LatticeSpec
            Number of sites, lattice constant and phase model.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        """
        self.lattice = lattice.validate()
        self.grid = tuple(grid)
        detuningGrid(self.grid)
        JCProblem.__init__(self, name, params, comm=comm, options=options)

    def _solve(self):
        spectrum = arraySpectrum(
            self.params, self.lattice, self.grid, poleTol=self.getOption("poleTol")
        )
        if spectrum.numFlagged:
            self.addWarning(
                f"{spectrum.numFlagged} detuning(s) were singular for the transfer "
                "matrices and were flagged."
            )
        return spectrum

    def getTable(self):
        return self.result.columns, self.result.table(), spectrumFormats(4)

    def getNumFlagged(self):
        return 0 if self.result is None else self.result.numFlagged

    def getMetadata(self):
        meta = JCProblem.getMetadata(self)
        meta["mode"] = "array"
        meta["lattice"] = self.lattice.asDict()
        meta["phase_model"] = self.lattice.phase_model
        meta["sweep"] = {
            "delta_min": self.grid[0],
            "delta_max": self.grid[1],
            "n_points": self.grid[2],
        }
        return meta

    def _summary(self):
        return (
            f"Computed the spectrum of {self.lattice.n_sites} site(s) on "
            f"{self.grid[2]} detunings, {self.getNumFlagged()} flagged."
        )
