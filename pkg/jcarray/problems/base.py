"""
Base class of the jcarray problems, one per run mode.
"""

# =============================================================================
# Imports
# =============================================================================
import json
import os
import time

import numpy as np

from .. import __version__
from ..cqed import validate
from ..utilities import BaseUI, OutputError

OUTPUT_FORMATS = ("csv", "json")


class JCProblem(BaseUI):
    """
    Base class for pyJCArray problem types. Contains the option handling,
    timing report and table/metadata writing common to all run modes.
    """

    # Default options shared by every problem. Subclasses extend this dict.
    defaultOptions = {
        "outputDir": [str, "./", "Output directory for data tables."],
        "outputFormat": [
            str,
            "csv",
            "Data table format.\n"
            "\t Acceptable values are:\n"
            "\t\t 'csv'  : comma separated, one header line\n"
            "\t\t 'json' : object with 'columns' and 'data' entries",
        ],
        "writeSolution": [bool, True, "Flag for suppressing all data table writing."],
        "writeMetadata": [
            bool,
            True,
            "Flag for writing the '<table>.meta.json' provenance sidecar.",
        ],
        "numberSolutions": [
            bool,
            False,
            "Flag for attaching solution counter index to output files.",
        ],
        "printTiming": [
            bool,
            False,
            "Flag for printing out timing information for class procedures.",
        ],
        "printLevel": [
            int,
            0,
            "Print level.\n"
            "\t Accepts:\n"
            "\t\t   0 : No printing.\n"
            "\t\t > 0 : Print run summaries.",
        ],
    }

    def __init__(self, name, params, comm=None, options=None):
        """
        NOTE: Problems should be created through the pyJCArray.createXProblem methods.

        Parameters
        ----------
        name : str
            Name of this problem, used as the default output base name.
        params : CqedParams
            Site parameters.
        comm : mpi4py.MPI.Intracomm or None
            Communicator, None runs serially.
        options : dict
            Problem-specific option parameters (case-insensitive).
        """
        self.name = name
        self.params = validate(params)
        # Solve counter
        self.callCounter = -1
        # Result of the latest solve
        self.result = None
        # Wall-clock seconds of the latest solve
        self.solveTime = None
        # Messages to carry into the metadata sidecar; setup ones outlive a solve
        self.setupWarnings = []
        self.warnings = []

        # Setup comm and options
        BaseUI.__init__(self, options=options, comm=comm)

    def setOption(self, name, value):
        """
        Set a solver option value. The name is not case sensitive.
        """
        BaseUI.setOption(self, name, value)
        if name.lower() == "outputformat" and value not in OUTPUT_FORMATS:
            raise self._JCError(
                f"outputFormat must be one of {OUTPUT_FORMATS}, got '{value}'."
            )

    def addWarning(self, message, setup=False):
        """
        Print a warning and record it for the metadata sidecar.

        Warnings raised by a solve are cleared by the next one; ``setup``
        warnings (e.g. run configuration overrides) are kept.
        """
        if setup:
            self.setupWarnings.append(message)
        self.warnings.append(message)
        self._JCWarning(message)

    ####### Solution methods ########

    def solve(self):
        """
        Run the computation for this problem and store the result.
        """
        startTime = time.time()

        self.callCounter += 1
        self.warnings = list(self.setupWarnings)

        setupProblemTime = time.time()
        self.result = self._solve()
        solveTime = time.time()

        self.solveTime = solveTime - startTime

        if self.getOption("printTiming"):
            self._pp("+--------------------------------------------------+")
            self._pp("|")
            self._pp(f"| {type(self).__name__} Solve Times:")
            self._pp("|")
            self._pp(
                "| %-30s: %10.3f sec" % ("Setup Time", setupProblemTime - startTime)
            )
            self._pp(
                "| %-30s: %10.3f sec" % ("Compute Time", solveTime - setupProblemTime)
            )
            self._pp("|")
            self._pp("| %-30s: %10.3f sec" % ("Total Solution Time", self.solveTime))
            self._pp("+--------------------------------------------------+")

        if self.getOption("printLevel") > 0:
            self._info(self._summary())

        return self.result

    def _solve(self):
        raise NotImplementedError("Child class must implement a '_solve' method")

    def _summary(self):
        return f"Computed {len(self.getTable()[1])} rows."

    def getResult(self):
        """Return the result of the latest solve (None before the first solve)."""
        return self.result

    def getTable(self):
        """
        Tabulate the latest result.

        Returns
        -------
        columns : tuple of str
            Column names in output order.
        data : numpy.ndarray
            2D array, one row per output line.
        formats : list of str
            printf-style format per column.
        """
        raise NotImplementedError("Child class must implement a 'getTable' method")

    def getNumFlagged(self):
        """Number of flagged rows in the latest result."""
        return 0

    def getMetadata(self):
        """
        Provenance of the latest result: resolved parameters, version and timing.
        """
        return {
            "problem": type(self).__name__,
            "name": self.name,
            "version": __version__,
            "params": self.params.asDict(),
            "regime": self.params.regime(),
            "wall_clock_seconds": self.solveTime,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "mpi_size": self.size,
            "warnings": list(self.warnings),
            "num_flagged": self.getNumFlagged(),
        }

    ####### Output methods ########

    def writeSolution(self, outputDir=None, baseName=None, number=None):
        """
        Write the data table (and metadata sidecar) of the latest solve.

        Parameters
        ----------
        outputDir : str or None
            Use the supplied output directory
        baseName : str or None
            Use this supplied string for the base filename.
        number : int or None
            Use the user supplied number to index solution.

        Returns
        -------
        fileName : str or None
            Path of the data table, None if writing is switched off.
        """
        if outputDir is None:
            outputDir = self.getOption("outputDir")

        if baseName is None:
            baseName = self.name

        # If we are numbering solution, add the call number
        if number is not None:
            baseName = baseName + "_%3.3d" % number
        elif self.getOption("numberSolutions"):
            baseName = baseName + "_%3.3d" % self.callCounter

        if not self.getOption("writeSolution"):
            return None

        fileName = os.path.join(outputDir, baseName) + "." + self.getOption("outputFormat")
        self.writeTable(fileName)
        return fileName

    def writeTable(self, fileName, outputFormat=None):
        """
        Write the data table to an explicit path. Only the root rank writes.

        Parameters
        ----------
        fileName : str
            Output path.
        outputFormat : str, optional
            'csv' or 'json', defaults to the outputFormat option.
        """
        if self.result is None:
            raise self._JCError("Nothing to write, call solve() first.")
        if outputFormat is None:
            outputFormat = self.getOption("outputFormat")
        if outputFormat not in OUTPUT_FORMATS:
            raise self._JCError(
                f"outputFormat must be one of {OUTPUT_FORMATS}, got '{outputFormat}'.",
                OutputError,
            )
        if self.rank != 0:
            return

        columns, data, formats = self.getTable()
        self._writeRows(fileName, outputFormat, columns, data, formats)
        if self.getOption("writeMetadata"):
            try:
                with open(fileName + ".meta.json", "w") as fh:
                    json.dump(self.getMetadata(), fh, indent=2, sort_keys=True)
                    fh.write("\n")
            except OSError as e:
                raise self._JCError(f"Could not write metadata for '{fileName}': {e}", OutputError)

    def _writeRows(self, fileName, outputFormat, columns, data, formats):
        """
        Write one table as CSV or JSON, 17 significant digits per float.
        JSON writes non-finite entries as null.
        """
        try:
            directory = os.path.dirname(fileName)
            if directory:
                os.makedirs(directory, exist_ok=True)
            if outputFormat == "csv":
                np.savetxt(
                    fileName,
                    data,
                    fmt=formats,
                    delimiter=",",
                    header=",".join(columns),
                    comments="",
                )
            else:
                rows = [
                    [
                        int(v) if f == "%d" else (float(v) if np.isfinite(v) else None)
                        for v, f in zip(row, formats)
                    ]
                    for row in data
                ]
                with open(fileName, "w") as fh:
                    json.dump({"columns": list(columns), "data": rows}, fh, allow_nan=False)
                    fh.write("\n")
        except OSError as e:
            raise self._JCError(f"Could not write '{fileName}': {e}", OutputError)

        self._info(f"Wrote {len(data)} rows to {fileName}")


def spectrumFormats(nColumns):
    """Formats for a table whose last column is an integer flag or count."""
    return ["%.17g"] * (nColumns - 1) + ["%d"]
