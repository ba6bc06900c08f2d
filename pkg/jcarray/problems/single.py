"""
The main purpose of this class is to represent all relevant
information for a single-site spectrum: the detuning sweep, an optional
scan over one rate, and the located transmission dips.

.. note:: This class should be created using the
    :meth:`pyJCArray.createSingleSiteProblem <jcarray.pyjcarray.pyJCArray.createSingleSiteProblem>` method.
"""

# =============================================================================
# Imports
# =============================================================================
import numpy as np

from ..cqed import CqedParams, cooperativity, detuningGrid, validate
from ..scattering import findTransmissionMinima, rabiSplitting, siteSpectrum
from ..utilities import DivisionByZeroRate, InvalidValue, SubcriticalCoupling
from .base import JCProblem, spectrumFormats


class SingleSiteProblem(JCProblem):
    # Default options for class
    defaultOptions = dict(
        JCProblem.defaultOptions,
        poleTol=[float, 1e-14, "Scattering denominators below this magnitude are poles."],
        findMinima=[
            bool,
            True,
            "Flag for locating the transmission minima and reporting them in the metadata.",
        ],
        minimaGrid=[int, 2001, "Pre-scan size used to bracket transmission minima."],
        minimaTol=[float, 1e-6, "Absolute accuracy of refined transmission minima."],
    )

    def __init__(self, name, params, grid, comm=None, options=None):
        """
        NOTE: This class should not be initialized directly by the user.
        Use pyJCArray.createSingleSiteProblem instead.

        Parameters
        ----------
        name : str
            Name of this problem
        params : CqedParams
            Site parameters.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        comm : mpi4py.MPI.Intracomm or None
            Communicator.
        options : dict
            Problem-specific option parameters (case-insensitive).
        """
        self.grid = tuple(grid)
        detuningGrid(self.grid)
        self.scanField = None
        self.scanValues = ()
        # Figures of the latest solve, filled on first request
        self.figures = None
        JCProblem.__init__(self, name, params, comm=comm, options=options)

    def setScan(self, field, values):
        """
        Repeat the spectrum for several values of one rate.

        Parameters
        ----------
        field : str
            A CqedParams field, e.g. 'g' or 'eta'.
        values : list of float
            Values taken by the field, in output order.
        """
        if field not in CqedParams.__dataclass_fields__ or field == "big_gamma":
            raise self._JCError(f"'{field}' is not a scannable parameter.", InvalidValue)
        if len(values) == 0:
            raise self._JCError("A scan needs at least one value.", InvalidValue)
        for value in values:
            validate(self.params.replace(**{field: float(value)}))
        self.scanField = field
        self.scanValues = tuple(float(value) for value in values)

    def _scanParams(self):
        if self.scanField is None:
            return [(None, self.params)]
        return [
            (value, self.params.replace(**{self.scanField: value}))
            for value in self.scanValues
        ]

    def _solve(self):
        poleTol = self.getOption("poleTol")
        self.figures = None
        result = []
        for value, params in self._scanParams():
            spectrum = siteSpectrum(params, self.grid, poleTol)
            if spectrum.numFlagged:
                self.addWarning(
                    f"{spectrum.numFlagged} detuning(s) hit a scattering pole "
                    f"and were flagged (scan value {value})."
                )
            result.append((value, params, spectrum))
        return result

    def getTable(self):
        columns = ("delta", "T", "R", "flag")
        blocks = []
        for value, _, spectrum in self.result:
            table = spectrum.table()
            if self.scanField is not None:
                table = np.column_stack([np.full(len(spectrum), value), table])
            blocks.append(table)
        if self.scanField is not None:
            columns = (self.scanField,) + columns
        data = np.vstack(blocks)
        return columns, data, spectrumFormats(len(columns))

    def getNumFlagged(self):
        if self.result is None:
            return 0
        return sum(spectrum.numFlagged for _, _, spectrum in self.result)

    def siteFigures(self, params):
        """
        Cooperativity, predicted Rabi splitting and located dips of one parameter set.
        Quantities that are undefined for the parameters are reported as None.
        """
        try:
            coop = cooperativity(params)
        except DivisionByZeroRate:
            coop = None
        try:
            rabi = rabiSplitting(params)
        except SubcriticalCoupling:
            rabi = None
        figures = {"cooperativity": coop, "rabi_splitting": rabi, "regime": params.regime()}
        if self.getOption("findMinima"):
            minima = findTransmissionMinima(
                params,
                self.grid[:2],
                grid=self.getOption("minimaGrid"),
                xtol=self.getOption("minimaTol"),
            )
            figures["transmission_minima"] = minima
        return figures

    def getSiteFigures(self):
        """``siteFigures`` of every parameter set of the latest solve, in scan order."""
        if self.figures is None:
            self.figures = [self.siteFigures(params) for _, params, _ in self.result]
        return self.figures

    def getMetadata(self):
        meta = JCProblem.getMetadata(self)
        meta["mode"] = "single"
        meta["sweep"] = {
            "delta_min": self.grid[0],
            "delta_max": self.grid[1],
            "n_points": self.grid[2],
        }
        if self.result is not None:
            if self.scanField is None:
                meta.update(self.getSiteFigures()[0])
            else:
                meta["scan"] = {
                    "field": self.scanField,
                    "values": list(self.scanValues),
                    "figures": self.getSiteFigures(),
                }
        return meta

    def _summary(self):
        nSpectra = len(self.result)
        return (
            f"Computed {nSpectra} single-site spectrum/spectra on {self.grid[2]} "
            f"detunings, {self.getNumFlagged()} flagged."
        )
