"""
The main purpose of this class is to represent all relevant
information for a band-structure run: the lossless site, one or more
lattice constants and the frequency window searched for forbidden bands.

.. note:: This class should be created using the
    :meth:`pyJCArray.createBandProblem <jcarray.pyjcarray.pyJCArray.createBandProblem>` method.
"""

# =============================================================================
# Imports
# =============================================================================
import os

import numpy as np

from ..bloch import blochSamples, findBandGaps, principalGap
from ..utilities import EmptyWindow, LossyParams, PreconditionViolation
from .base import JCProblem


class BandProblem(JCProblem):
    # Default options for class
    defaultOptions = dict(
        JCProblem.defaultOptions,
        edgeTol=[float, 1e-12, "Bisection accuracy of gap edges, in units of Gamma."],
        writeDispersion=[
            bool,
            False,
            "Flag for also writing the sampled dispersion to '<table>.dispersion.<fmt>'.",
        ],
    )

    def __init__(self, name, params, lattices, omegaWindow, grid, comm=None, options=None):
        """
        NOTE: This class should not be initialized directly by the user.
        Use pyJCArray.createBandProblem instead.

        Parameters
        ----------
        name : str
            Name of this problem
        params : CqedParams
            Lossless site parameters.
        lattices : list of LatticeSpec
            Lattices to analyze, one gap list each.
        omegaWindow : tuple
            ``(omegaMin, omegaMax)`` in units of omega_eg.
        grid : int
            Number of scan points per lattice.
        """
        if not params.lossless():
            raise LossyParams(
                "BandProblem",
                "Band structure requires kappa = gamma = 0 "
                f"(kappa={params.kappa}, gamma={params.gamma}).",
            )
        self.lattices = [lattice.validate() for lattice in lattices]
        if len(self.lattices) == 0:
            raise PreconditionViolation("BandProblem", "At least one lattice is required.")
        self.omegaWindow = tuple(omegaWindow)
        if not self.omegaWindow[0] < self.omegaWindow[1]:
            raise EmptyWindow("BandProblem", f"Invalid frequency window {self.omegaWindow}.")
        self.grid = int(grid)
        if self.grid < 100:
            raise PreconditionViolation(
                "BandProblem", f"A band scan needs at least 100 points, got {grid}."
            )
        self.dispersion = None
        JCProblem.__init__(self, name, params, comm=comm, options=options)

    def _solve(self):
        result = []
        for lattice in self.lattices:
            gaps = findBandGaps(
                self.params,
                lattice,
                self.omegaWindow,
                self.grid,
                edgeTol=self.getOption("edgeTol"),
            )
            result.append((lattice, gaps))
        if self.getOption("writeDispersion"):
            omegas = np.linspace(self.omegaWindow[0], self.omegaWindow[1], self.grid)
            self.dispersion = [
                (lattice, blochSamples(self.params, lattice, omegas))
                for lattice in self.lattices
            ]
        return result

    def getGaps(self, lOverLambda0=None):
        """
        Gaps of the latest solve.

        Parameters
        ----------
        lOverLambda0 : float, optional
            Lattice constant to select; all lattices are returned when omitted.
        """
        if lOverLambda0 is None:
            return {lattice.l_over_lambda0: gaps for lattice, gaps in self.result}
        for lattice, gaps in self.result:
            if lattice.l_over_lambda0 == lOverLambda0:
                return gaps
        raise KeyError(lOverLambda0)

    def getTable(self):
        columns = ("L_over_lambda0", "omega_lo", "omega_hi", "width")
        rows = [
            (lattice.l_over_lambda0, gap.omega_lo, gap.omega_hi, gap.width)
            for lattice, gaps in self.result
            for gap in gaps
        ]
        data = np.array(rows, dtype=float).reshape(-1, 4)
        return columns, data, ["%.17g"] * 4

    def getDispersionTable(self):
        columns = ("L_over_lambda0", "omega_over_omega_eg", "q_l", "rhs", "k_l", "propagating")
        rows = [
            (
                lattice.l_over_lambda0,
                s.omega_over_omega_eg,
                s.q_l,
                s.rhs,
                s.k_l,
                int(s.propagating),
            )
            for lattice, samples in self.dispersion
            for s in samples
        ]
        data = np.array(rows, dtype=float).reshape(-1, 6)
        return columns, data, ["%.17g"] * 5 + ["%d"]

    def writeTable(self, fileName, outputFormat=None):
        JCProblem.writeTable(self, fileName, outputFormat)
        if self.dispersion is None or self.rank != 0:
            return
        if outputFormat is None:
            outputFormat = self.getOption("outputFormat")
        root, ext = os.path.splitext(fileName)
        dispersionFile = f"{root}.dispersion{ext or '.' + outputFormat}"
        self._writeRows(dispersionFile, outputFormat, *self.getDispersionTable())

    def getMetadata(self):
        meta = JCProblem.getMetadata(self)
        meta["mode"] = "bands"
        meta["lattices"] = [lattice.asDict() for lattice in self.lattices]
        meta["sweep"] = {
            "omega_min": self.omegaWindow[0],
            "omega_max": self.omegaWindow[1],
            "n_points": self.grid,
        }
        if self.result is not None:
            meta["principal_gaps"] = {}
            for lattice, gaps in self.result:
                gap = principalGap(gaps)
                meta["principal_gaps"][str(lattice.l_over_lambda0)] = (
                    None if gap is None else [gap.omega_lo, gap.omega_hi, gap.width]
                )
        return meta

    def _summary(self):
        counts = ", ".join(
            f"L/lambda0={lattice.l_over_lambda0}: {len(gaps)}" for lattice, gaps in self.result
        )
        return f"Band gaps found per lattice constant: {counts}."
