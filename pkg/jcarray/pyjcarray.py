"""
pyJCArray - The front end for single-photon transport through
waveguide-coupled Jaynes-Cummings arrays.

The front object holds the site parameters and array geometry shared by a
set of runs. After ``initialize`` it creates problem instances, one per run
mode, that perform the computation and write the result tables.
"""

# =============================================================================
# Imports
# =============================================================================
from functools import wraps

from . import problems
from .cqed import CqedParams, validate
from .utilities import BaseUI, MissingField


# Define decorator functions for methods that must be called before initialize
def preinitialize_method(method):
    @wraps(method)
    def wrapped_method(self, *args, **kwargs):
        if self.initialized:
            raise self._JCError(
                f"`{method.__name__}` is a pre-initialize method. "
                "It may only be called before the 'initialize' method has been called."
            )
        else:
            return method(self, *args, **kwargs)

    return wrapped_method


# Define decorator functions for methods that must be called after initialize
def postinitialize_method(method):
    @wraps(method)
    def wrapped_method(self, *args, **kwargs):
        if not self.initialized:
            raise self._JCError(
                f"`{method.__name__}` is a post-initialize method. "
                "It may only be called after the 'initialize' method has been called."
            )
        else:
            return method(self, *args, **kwargs)

    return wrapped_method


class pyJCArray(BaseUI):
    """
    The class for setting up Jaynes-Cummings array computations
    """

    # Default class options
    defaultOptions = {
        "printLevel": [
            int,
            0,
            "Print level.\n"
            "\t Accepts:\n"
            "\t\t   0 : No printing.\n"
            "\t\t > 0 : Print setup summaries.",
        ],
        "printTiming": [
            bool,
            False,
            "Flag for printing out timing information for created problems.",
        ],
    }

    def __init__(self, params=None, comm=None, options=None):
        """
        Parameters
        ----------
        params : CqedParams, optional
            Site parameters shared by every problem. Defaults to a decoupled,
            lossless site.
        comm : mpi4py.MPI.Intracomm or None
            The comm object on which to create the pyJCArray object.
        options : dict
            Dictionary holding model-specific option parameters (case-insensitive).
        """
        self.initialized = False
        self.params = CqedParams() if params is None else params
        self.lattice = None
        self.disorder = None
        BaseUI.__init__(self, options, comm)

    @classmethod
    def fromConfig(cls, config, comm=None, options=None):
        """
        Create and initialize a pyJCArray object from a RunConfig.
        """
        front = cls(config.params, comm=comm, options=options)
        if config.lattice is not None:
            front.setLattice(config.lattice)
        if config.disorder is not None:
            front.setDisorder(config.disorder)
        front.initialize()
        return front

    @preinitialize_method
    def setParams(self, params):
        """Replace the site parameters."""
        self.params = params

    @preinitialize_method
    def setLattice(self, lattice):
        """Set the default array geometry (a LatticeSpec)."""
        self.lattice = lattice

    @preinitialize_method
    def setDisorder(self, disorder):
        """Set the default position disorder (a DisorderSpec)."""
        self.disorder = disorder

    @preinitialize_method
    def initialize(self):
        """
        Validate the site, lattice and disorder descriptions. Problems may be
        created only after this call.
        """
        validate(self.params)
        if self.lattice is not None:
            self.lattice.validate()
        if self.disorder is not None:
            self.disorder.validate()
        self.initialized = True
        self._info(
            f"Initialized with {self.params.regime()} site "
            f"(g={self.params.g}, kappa={self.params.kappa}, gamma={self.params.gamma}, "
            f"eta={self.params.eta}, delta_ac={self.params.delta_ac})."
        )

    def _problemOptions(self, options):
        problemOptions = {"printTiming": self.getOption("printTiming")}
        problemOptions.update(options or {})
        return problemOptions

    def _require(self, value, what):
        if value is None:
            raise self._JCError(f"No {what} given and no default was set.", MissingField)
        return value

    @postinitialize_method
    def createSingleSiteProblem(self, name, grid, options=None):
        """
        Create a new SingleSiteProblem for the spectrum of one site.

        Parameters
        ----------
        name : str
            Name to assign problem.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        options : dict
            Problem-specific options to pass to SingleSiteProblem instance (case-insensitive).

        Returns
        ----------
        problem : SingleSiteProblem
        """
        return problems.SingleSiteProblem(
            name, self.params, grid, comm=self.comm, options=self._problemOptions(options)
        )

    @postinitialize_method
    def createArrayProblem(self, name, grid, lattice=None, options=None):
        """
        Create a new ArrayProblem for the spectrum of a finite periodic array.

        Parameters
        ----------
        name : str
            Name to assign problem.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        lattice : LatticeSpec, optional
            Overrides the lattice set with setLattice.
        options : dict
            Problem-specific options to pass to ArrayProblem instance (case-insensitive).

        Returns
        ----------
        problem : ArrayProblem
        """
        lattice = self._require(lattice or self.lattice, "lattice")
        return problems.ArrayProblem(
            name,
            self.params,
            lattice,
            grid,
            comm=self.comm,
            options=self._problemOptions(options),
        )

    @postinitialize_method
    def createBandProblem(self, name, omegaWindow, grid, lattices=None, options=None):
        """
        Create a new BandProblem locating forbidden bands of the infinite lattice.

        Parameters
        ----------
        name : str
            Name to assign problem.
        omegaWindow : tuple
            ``(omegaMin, omegaMax)`` in units of omega_eg.
        grid : int
            Number of scan points per lattice.
        lattices : list of LatticeSpec, optional
            Lattices to analyze, defaults to the lattice set with setLattice.
        options : dict
            Problem-specific options to pass to BandProblem instance (case-insensitive).

        Returns
        ----------
        problem : BandProblem
        """
        if lattices is None:
            lattices = [self._require(self.lattice, "lattice")]
        return problems.BandProblem(
            name,
            self.params,
            lattices,
            omegaWindow,
            grid,
            comm=self.comm,
            options=self._problemOptions(options),
        )

    @postinitialize_method
    def createDisorderProblem(self, name, grid, lattice=None, disorder=None, options=None):
        """
        Create a new DisorderProblem averaging spectra over position disorder.

        Parameters
        ----------
        name : str
            Name to assign problem.
        grid : tuple
            ``(deltaMin, deltaMax, nPoints)`` detuning sweep.
        lattice : LatticeSpec, optional
            Overrides the lattice set with setLattice.
        disorder : DisorderSpec, optional
            Overrides the disorder set with setDisorder.
        options : dict
            Problem-specific options to pass to DisorderProblem instance (case-insensitive).

        Returns
        ----------
        problem : DisorderProblem
        """
        lattice = self._require(lattice or self.lattice, "lattice")
        disorder = self._require(disorder or self.disorder, "disorder")
        return problems.DisorderProblem(
            name,
            self.params,
            lattice,
            disorder,
            grid,
            comm=self.comm,
            options=self._problemOptions(options),
        )

    @postinitialize_method
    def createProblemFromConfig(self, config, name=None, options=None):
        """
        Create the problem described by a RunConfig.

        Parameters
        ----------
        config : RunConfig
            Validated run description.
        name : str, optional
            Problem name, defaults to the run mode.
        options : dict
            Problem-specific options (case-insensitive).
        """
        name = config.mode if name is None else name
        options = dict(options or {})
        options.setdefault("outputFormat", config.output_format)
        if config.mode == "single":
            problem = self.createSingleSiteProblem(name, config.sweep, options)
            if config.scan is not None:
                problem.setScan(*config.scan)
        elif config.mode == "array":
            problem = self.createArrayProblem(name, config.sweep, config.lattice, options)
        elif config.mode == "bands":
            options.setdefault("writeDispersion", config.write_dispersion)
            problem = self.createBandProblem(
                name, config.sweep[:2], config.sweep[2], list(config.lattices), options
            )
        else:
            problem = self.createDisorderProblem(
                name, config.sweep, config.lattice, config.disorder, options
            )
        for message in config.warnings:
            problem.addWarning(message, setup=True)
        return problem
